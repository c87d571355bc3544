#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <memory>

#include "causalbn/config.hpp"
#include "causalbn/ev_study.hpp"
#include "causalbn/graph_io.hpp"
#include "causalbn/infer.hpp"
#include "causalbn/sampling.hpp"
#include "causalbn/serialize.hpp"

namespace fs = std::filesystem;
using namespace causalbn;

namespace {

// Exit codes: 0 ok, 2 config, 3 data, 4 identification, 5 numerical/positivity.
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitIdentification = 4;
constexpr int kExitNumerical = 5;

struct Pipeline {
  PipelineConfig cfg;
  std::shared_ptr<const VariableSchema> schema;
};

Pipeline open_pipeline(const std::string& config_path) {
  Pipeline p;
  p.cfg = load_pipeline_config(config_path);
  if (p.cfg.schema_path.empty()) throw ConfigError("config misses 'schema'");
  p.schema = std::make_shared<VariableSchema>(load_schema(p.cfg.schema_path));
  validate_pipeline_config(p.cfg, *p.schema);
  fs::create_directories(p.cfg.output_dir);
  return p;
}

std::string symbol_of(const VariableSchema& schema, const std::string& name_or_symbol) {
  return schema.at(schema.resolve(name_or_symbol)).symbol;
}

Dataset open_data(const Pipeline& p) {
  if (p.cfg.data_path.empty()) throw ConfigError("config misses 'data'");
  Dataset data = load_csv(p.cfg.data_path, p.schema, p.cfg.weight_column);
  if (p.cfg.resample) {
    const std::size_t n = p.cfg.resample_n ? p.cfg.resample_n : data.rows();
    data = weighted_resample(data, n, p.cfg.resample_seed);
  }
  return data;
}

std::string provenance_comment(const Pipeline& p) {
  return "# config_hash=" + p.cfg.config_hash + " master_seed=" + std::to_string(p.cfg.master_seed) +
         "\n";
}

void stamp(json& doc, const Pipeline& p) {
  doc["config_hash"] = p.cfg.config_hash;
  doc["master_seed"] = p.cfg.master_seed;
}

std::string out_path(const Pipeline& p, const std::string& file) {
  return (fs::path(p.cfg.output_dir) / file).string();
}

std::string default_outcome_state(const VariableSchema& schema, const std::string& outcome) {
  return schema.at(schema.resolve(outcome)).states.front();
}

// Estimand variables canonicalized to graph symbols.
struct ResolvedEstimand {
  EstimandSpec spec;
  std::set<std::string> adjustment;
  bool rejected = false;
  std::string rejection;
};

ResolvedEstimand resolve_estimand(const Pipeline& p, const CausalDag& graph,
                                  const EstimandSpec& raw) {
  ResolvedEstimand r;
  r.spec = raw;
  r.spec.treatment = symbol_of(*p.schema, raw.treatment);
  r.spec.outcome = symbol_of(*p.schema, raw.outcome);
  r.spec.adjustment.clear();
  for (const std::string& z : raw.adjustment) r.spec.adjustment.insert(symbol_of(*p.schema, z));

  if (r.spec.auto_adjustment) {
    const auto sets =
        find_adjustment_sets(graph, r.spec.treatment, r.spec.outcome, p.cfg.adjustment_max_size);
    if (sets.empty())
      throw InvalidAdjustmentError("no adjustment set of size <= " +
                                       std::to_string(p.cfg.adjustment_max_size) + " for " +
                                       raw.name,
                                   std::nullopt);
    r.adjustment = sets.front();
  } else {
    const BackdoorCheck check =
        check_backdoor(graph, r.spec.treatment, r.spec.outcome, r.spec.adjustment);
    if (!check.valid) {
      r.rejected = true;
      if (check.open_path)
        r.rejection = "open back-door path: " +
                      render_path(mutilate(graph, r.spec.treatment), *check.open_path);
      else
        r.rejection = "invalid adjustment member: " + *check.bad_node;
      return r;
    }
    r.adjustment = r.spec.adjustment;
  }
  return r;
}

int cmd_discover(const std::string& config_path) {
  const Pipeline p = open_pipeline(config_path);
  const Dataset data = open_data(p);
  const DiscoveryResult result = discover(data, p.cfg.blacklist, p.cfg.discovery);

  std::string mag = provenance_comment(p) + format_graph(result.graph);
  write_text(out_path(p, "discovered.graph"), mag);
  write_text(out_path(p, "discovery_log.jsonl"),
             provenance_comment(p) + skeleton_log_jsonl(result.skeleton) +
                 orientation_log_jsonl(result.orientation_log));
  std::cout << "discovered graph written to " << out_path(p, "discovered.graph") << "\n";
  return 0;
}

int cmd_identify(const std::string& config_path) {
  const Pipeline p = open_pipeline(config_path);
  if (p.cfg.graph_path.empty()) throw ConfigError("config misses 'graph'");
  const CausalDag graph = load_dag(p.cfg.graph_path);

  for (const EstimandSpec& raw : p.cfg.estimands) {
    const ResolvedEstimand r = resolve_estimand(p, graph, raw);
    json doc;
    if (r.rejected) {
      doc = json{{"name", raw.name},
                 {"treatment", r.spec.treatment},
                 {"outcome", r.spec.outcome},
                 {"adjustment", std::vector<std::string>(r.spec.adjustment.begin(),
                                                         r.spec.adjustment.end())},
                 {"identified", false},
                 {"rejection", r.rejection}};
      std::cout << raw.name << ": REJECTED (" << r.rejection << ")\n";
    } else {
      const AdjustmentEstimand est(graph, r.spec.treatment, r.spec.outcome, r.adjustment);
      doc = estimand_to_json(est, graph);
      doc["name"] = raw.name;
      doc["identified"] = true;
      std::cout << raw.name << ": adjustment {";
      bool first = true;
      for (const std::string& z : r.adjustment) {
        if (!first) std::cout << ", ";
        std::cout << z;
        first = false;
      }
      std::cout << "} blocks " << est.certificate().size() << " back-door paths\n";
    }
    stamp(doc, p);
    write_text(out_path(p, "identify_" + raw.name + ".json"), doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_estimate(const std::string& config_path) {
  const Pipeline p = open_pipeline(config_path);
  if (p.cfg.graph_path.empty()) throw ConfigError("config misses 'graph'");
  const CausalDag graph = load_dag(p.cfg.graph_path);
  const Dataset data = open_data(p);
  const DiscreteBayesNet bn = fit_mle(observed_projection(graph), data, p.cfg.alpha);

  for (const EstimandSpec& raw : p.cfg.estimands) {
    const ResolvedEstimand r = resolve_estimand(p, graph, raw);
    if (r.rejected) throw InvalidAdjustmentError(raw.name + ": " + r.rejection, std::nullopt);
    const AdjustmentEstimand est(graph, r.spec.treatment, r.spec.outcome, r.adjustment);

    json doc;
    stamp(doc, p);
    doc["name"] = raw.name;
    doc["estimand"] = estimand_to_json(est, graph);

    if (raw.aggregate_income_bands) {
      const BandPartition part = income_partition(*p.schema);
      const std::vector<std::string>& states = bn.card(r.spec.treatment).states;
      std::vector<std::vector<double>> per_band;
      for (const std::string& s : states) per_band.push_back(backdoor_adjust(bn, est, s));
      const std::vector<double> margins = marginal(bn, r.spec.treatment).values();
      const auto groups = aggregate_bands(per_band, margins, part);

      EffectReport rep;
      rep.kind = "interventional";
      rep.treatment = r.spec.treatment;
      rep.outcome = r.spec.outcome;
      rep.control_state = raw.control_state;
      rep.treated_state = raw.treated_state;
      rep.outcome_states = bn.card(r.spec.outcome).states;
      for (std::size_t g = 0; g < part.groups.size(); ++g) {
        if (part.groups[g].first == raw.control_state) rep.control_dist = groups[g];
        if (part.groups[g].first == raw.treated_state) rep.treated_dist = groups[g];
      }
      if (rep.control_dist.empty() || rep.treated_dist.empty())
        throw ConfigError(raw.name + ": control/treated must name band groups (low/high)");
      for (std::size_t i = 0; i < rep.outcome_states.size(); ++i)
        rep.delta_pp.push_back((rep.treated_dist[i] - rep.control_dist[i]) * 100.0);
      doc["interventional"] = effect_report_to_json(rep);
      write_text(out_path(p, "effect_" + raw.name + ".csv"),
                 provenance_comment(p) + effect_report_csv(rep));
      std::cout << raw.name << ": grouped interventional contrast written\n";
    } else {
      const EffectReport te = treatment_effect(bn, est, raw.control_state, raw.treated_state);
      const EffectReport obs = observational_contrast(bn, r.spec.treatment, r.spec.outcome,
                                                      raw.control_state, raw.treated_state);
      doc["interventional"] = effect_report_to_json(te);
      doc["observational"] = effect_report_to_json(obs);
      write_text(out_path(p, "effect_" + raw.name + ".csv"),
                 provenance_comment(p) + effect_report_csv(te));
      write_text(out_path(p, "effect_" + raw.name + "_obs.csv"),
                 provenance_comment(p) + effect_report_csv(obs));
      std::cout << raw.name << ": interventional + observational contrasts written\n";
    }
    write_text(out_path(p, "effect_" + raw.name + ".json"), doc.dump(2) + "\n");
  }
  return 0;
}

int cmd_refute(const std::string& config_path) {
  const Pipeline p = open_pipeline(config_path);
  if (p.cfg.graph_path.empty()) throw ConfigError("config misses 'graph'");
  const CausalDag graph = load_dag(p.cfg.graph_path);
  const Dataset data = open_data(p);
  const CausalDag fit_dag = observed_projection(graph);

  for (const EstimandSpec& raw : p.cfg.estimands) {
    if (raw.aggregate_income_bands) continue;  // refutation targets plain state contrasts
    const ResolvedEstimand r = resolve_estimand(p, graph, raw);
    if (r.rejected) throw InvalidAdjustmentError(raw.name + ": " + r.rejection, std::nullopt);

    RefutationConfig cfg;
    cfg.iterations = p.cfg.refute_iterations;
    cfg.master_seed = p.cfg.master_seed;
    cfg.subsample_fraction = p.cfg.subsample_fraction;
    cfg.alpha = p.cfg.alpha;
    cfg.target.treatment = r.spec.treatment;
    cfg.target.outcome = r.spec.outcome;
    cfg.target.adjustment = r.adjustment;
    cfg.target.control_state = raw.control_state;
    cfg.target.treated_state = raw.treated_state;
    cfg.target.outcome_state = raw.outcome_state.empty()
                                   ? default_outcome_state(*p.schema, r.spec.outcome)
                                   : raw.outcome_state;

    for (const char* kind : {"placebo", "subsample"}) {
      const RefutationReport rep = std::string(kind) == "placebo"
                                       ? placebo_test(data, fit_dag, cfg)
                                       : subsample_test(data, fit_dag, cfg);
      json doc = refutation_report_to_json(rep);
      stamp(doc, p);
      doc["name"] = raw.name;
      doc["target_state"] = cfg.target.outcome_state;
      write_text(out_path(p, "refute_" + raw.name + "_" + kind + ".json"), doc.dump(2) + "\n");
      std::cout << raw.name << " " << kind << ": baseline " << rep.baseline_pp
                << " pp, p = " << rep.p_value << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const std::string& config_path) {
  const Pipeline p = open_pipeline(config_path);
  if (!p.cfg.simulate) throw ConfigError("config misses 'simulate'");
  const SimulateSpec& s = *p.cfg.simulate;
  const DiscreteBayesNet bn = load_net(s.generator);
  const Dataset data = forward_sample(bn, s.n, s.seed, s.hide);
  const std::string path = out_path(p, s.output);
  save_csv(data, path);
  std::cout << "simulated " << data.rows() << " rows to " << path << "\n";
  return 0;
}

int cmd_report(const std::string& config_path) {
  const Pipeline p = open_pipeline(config_path);
  bool any = false;
  for (const auto& entry : fs::directory_iterator(p.cfg.output_dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.path().extension() != ".json") continue;
    const json doc = json::parse(read_text(entry.path().string()));
    if (name.rfind("effect_", 0) == 0 && doc.contains("interventional")) {
      const json& te = doc["interventional"];
      std::cout << name << ": " << te["treatment"].get<std::string>() << " -> "
                << te["outcome"].get<std::string>() << " [" << te["control_state"].get<std::string>()
                << " vs " << te["treated_state"].get<std::string>() << "]\n";
      const auto states = te["outcome_states"].get<std::vector<std::string>>();
      const auto delta = te["delta_pp"].get<std::vector<double>>();
      for (std::size_t i = 0; i < states.size(); ++i)
        std::cout << "    " << states[i] << ": " << delta[i] << " pp\n";
      any = true;
    } else if (name.rfind("refute_", 0) == 0) {
      std::cout << name << ": baseline " << doc["baseline_pp"].get<double>() << " pp, p = "
                << doc["p_value"].get<double>() << " (" << doc["kind"].get<std::string>() << ")\n";
      any = true;
    }
  }
  if (!any) std::cout << "no report files in " << p.cfg.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete causal Bayesian-network pipeline"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("-c,--config", config_path, "pipeline config (JSON)")->required();

  auto* discover_cmd = app.add_subcommand("discover", "learn a mixed graph from data");
  auto* identify_cmd = app.add_subcommand("identify", "back-door certificates for estimands");
  auto* estimate_cmd = app.add_subcommand("estimate", "interventional and observational contrasts");
  auto* refute_cmd = app.add_subcommand("refute", "placebo and subsample robustness tests");
  auto* simulate_cmd = app.add_subcommand("simulate", "forward-sample a synthetic dataset");
  auto* report_cmd = app.add_subcommand("report", "summarize previously written outputs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (discover_cmd->parsed()) return cmd_discover(config_path);
    if (identify_cmd->parsed()) return cmd_identify(config_path);
    if (estimate_cmd->parsed()) return cmd_estimate(config_path);
    if (refute_cmd->parsed()) return cmd_refute(config_path);
    if (simulate_cmd->parsed()) return cmd_simulate(config_path);
    if (report_cmd->parsed()) return cmd_report(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidAdjustmentError& e) {
    std::cerr << "identification error: " << e.what() << "\n";
    return kExitIdentification;
  } catch (const UnsupportedStratumError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ZeroEvidenceProbabilityError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ZeroFrequencyError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ZeroDenominatorError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const SchemaMismatchError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const EmptyFileError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const MissingColumnError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const EmptyDatasetError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const MissingWeightsError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const UnmappedStateError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
