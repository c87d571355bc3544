#include "causalbn/config.hpp"

#include "causalbn/serialize.hpp"

namespace causalbn {

PipelineConfig load_pipeline_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const std::exception& e) {
    throw ConfigError("cannot parse config " + path + ": " + e.what());
  }
  try {
    PipelineConfig cfg;
    cfg.data_path = doc.value("data", "");
    cfg.schema_path = doc.value("schema", "");
    cfg.graph_path = doc.value("graph", "");
    cfg.output_dir = doc.value("output_dir", ".");
    cfg.weight_column = doc.value("weight_column", "");
    if (doc.contains("resample")) {
      const json& r = doc["resample"];
      cfg.resample = r.value("enabled", true);
      cfg.resample_n = r.value("n", 0u);
      cfg.resample_seed = r.value("seed", 0u);
    }
    cfg.alpha = doc.value("alpha", 1e-5);
    cfg.adjustment_max_size = doc.value("adjustment_max_size", 3);
    if (doc.contains("blacklist"))
      for (const json& e : doc["blacklist"])
        cfg.blacklist.forbidden.insert({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    if (doc.contains("discovery")) {
      const json& d = doc["discovery"];
      cfg.discovery.max_contributors = d.value("max_contributors", 3);
      cfg.discovery.complexity_scale = d.value("complexity_scale", 1.0);
    }
    if (doc.contains("refutation")) {
      const json& r = doc["refutation"];
      cfg.refute_iterations = r.value("iterations", 1000);
      cfg.master_seed = r.value("master_seed", 0u);
      cfg.subsample_fraction = r.value("subsample_fraction", 0.8);
    }
    if (doc.contains("estimands")) {
      for (const json& e : doc["estimands"]) {
        EstimandSpec spec;
        spec.name = e.at("name");
        spec.treatment = e.at("treatment");
        spec.outcome = e.at("outcome");
        if (!e.contains("adjustment") || (e["adjustment"].is_string() && e["adjustment"] == "auto")) {
          spec.auto_adjustment = true;
        } else {
          for (const json& z : e["adjustment"]) spec.adjustment.insert(z.get<std::string>());
        }
        spec.control_state = e.at("control");
        spec.treated_state = e.at("treated");
        spec.outcome_state = e.value("outcome_state", "");
        spec.aggregate_income_bands = e.value("aggregate_income_bands", false);
        cfg.estimands.push_back(std::move(spec));
      }
    }
    if (doc.contains("simulate")) {
      const json& s = doc["simulate"];
      SimulateSpec spec;
      spec.generator = s.at("generator");
      spec.n = s.value("n", 1000u);
      spec.seed = s.value("seed", 0u);
      if (s.contains("hide"))
        for (const json& h : s["hide"]) spec.hide.insert(h.get<std::string>());
      spec.output = s.value("output", "synthetic.csv");
      cfg.simulate = std::move(spec);
    }
    cfg.config_hash = fnv1a_hex(doc.dump());
    return cfg;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("bad config " + path + ": " + e.what());
  }
}

void validate_pipeline_config(const PipelineConfig& cfg, const VariableSchema& schema) {
  try {
    cfg.blacklist.validate(schema);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("blacklist: ") + e.what());
  }
  for (const EstimandSpec& e : cfg.estimands) {
    try {
      const int t = schema.resolve(e.treatment);
      const int y = schema.resolve(e.outcome);
      if (schema.state_index(t, e.control_state) < 0)
        throw ConfigError("estimand " + e.name + ": unknown control state '" + e.control_state + "'");
      if (schema.state_index(t, e.treated_state) < 0)
        throw ConfigError("estimand " + e.name + ": unknown treated state '" + e.treated_state + "'");
      if (!e.outcome_state.empty() && schema.state_index(y, e.outcome_state) < 0)
        throw ConfigError("estimand " + e.name + ": unknown outcome state '" + e.outcome_state + "'");
      for (const std::string& z : e.adjustment) schema.resolve(z);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ConfigError("estimand " + e.name + ": " + ex.what());
    }
  }
  if (cfg.alpha < 0) throw ConfigError("alpha must be non-negative");
  if (!(cfg.subsample_fraction > 0.0) || cfg.subsample_fraction > 1.0)
    throw ConfigError("subsample_fraction must lie in (0, 1]");
  if (cfg.refute_iterations < 1) throw ConfigError("refutation iterations must be >= 1");
  if (cfg.adjustment_max_size < 0) throw ConfigError("adjustment_max_size must be >= 0");
}

}  // namespace causalbn
