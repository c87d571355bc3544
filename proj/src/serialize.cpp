#include "causalbn/serialize.hpp"

#include <fstream>
#include <sstream>

namespace causalbn {

json net_to_json(const DiscreteBayesNet& bn) {
  json doc;
  doc["format"] = "causalbn-net";
  doc["version"] = 1;
  json vars = json::array();
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const VariableCard& c = bn.card(static_cast<int>(i));
    vars.push_back({{"name", c.name},
                    {"observed", bn.dag().node(static_cast<int>(i)).observed},
                    {"states", c.states}});
  }
  doc["variables"] = vars;
  json edges = json::array();
  for (const auto& [tail, head] : bn.dag().edge_list()) edges.push_back({tail, head});
  doc["edges"] = edges;

  json cpts = json::array();
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const Cpt& c = bn.cpt(static_cast<int>(i));
    json rows = json::array();
    std::vector<int> pstate(c.parents.size(), 0);
    for (std::size_t r = 0; r < c.rows(); ++r) {
      json labels = json::array();
      for (std::size_t p = 0; p < c.parents.size(); ++p)
        labels.push_back(bn.card(c.parents[p]).states[pstate[p]]);
      json probs = json::array();
      for (int v = 0; v < c.child_card; ++v) probs.push_back(c.p(r, v));
      rows.push_back({{"given", labels}, {"p", probs}});
      for (int p = static_cast<int>(pstate.size()) - 1; p >= 0; --p) {
        if (++pstate[p] < c.parent_cards[p]) break;
        pstate[p] = 0;
      }
    }
    cpts.push_back({{"child", c.child}, {"parents", c.parents}, {"rows", rows}});
  }
  doc["cpts"] = cpts;
  return doc;
}

DiscreteBayesNet net_from_json(const json& doc) {
  if (doc.value("format", "") != "causalbn-net") throw Error("not a network document");
  std::vector<Node> nodes;
  std::vector<VariableCard> cards;
  std::map<std::string, int> index;
  for (const json& v : doc.at("variables")) {
    Node n{v.at("name").get<std::string>(), v.value("observed", true)};
    index[n.name] = static_cast<int>(nodes.size());
    nodes.push_back(n);
    cards.push_back(VariableCard{n.name, v.at("states").get<std::vector<std::string>>()});
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const json& e : doc.at("edges")) edges.emplace_back(e.at(0), e.at(1));
  CausalDag dag(nodes, edges);

  auto state_of = [&](const std::string& var, const std::string& label) {
    const auto& states = cards[index.at(var)].states;
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == label) return static_cast<int>(i);
    throw Error("unknown state '" + label + "' for " + var);
  };

  std::vector<Cpt> cpts(nodes.size());
  std::vector<bool> seen(nodes.size(), false);
  for (const json& jc : doc.at("cpts")) {
    const std::string child = jc.at("child");
    const int ci = index.at(child);
    Cpt c;
    c.child = child;
    c.parents = jc.at("parents").get<std::vector<std::string>>();
    for (const std::string& p : c.parents)
      c.parent_cards.push_back(static_cast<int>(cards[index.at(p)].states.size()));
    c.child_card = static_cast<int>(cards[ci].states.size());
    c.table.assign(c.rows() * c.child_card, -1.0);
    for (const json& row : jc.at("rows")) {
      const auto& labels = row.at("given");
      if (labels.size() != c.parents.size()) throw Error("CPT row arity mismatch for " + child);
      std::vector<int> pstate;
      for (std::size_t p = 0; p < c.parents.size(); ++p)
        pstate.push_back(state_of(c.parents[p], labels.at(p)));
      const std::size_t r = c.row_of(pstate);
      const auto& probs = row.at("p");
      if (static_cast<int>(probs.size()) != c.child_card)
        throw Error("CPT row width mismatch for " + child);
      for (int v = 0; v < c.child_card; ++v) c.table[r * c.child_card + v] = probs.at(v);
    }
    for (double p : c.table)
      if (p < 0.0) throw Error("CPT for " + child + " misses a parent configuration");
    cpts[ci] = std::move(c);
    seen[ci] = true;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!seen[i]) throw Error("network document misses CPT for " + nodes[i].name);
  return DiscreteBayesNet(std::move(dag), std::move(cards), std::move(cpts));
}

void save_net(const DiscreteBayesNet& bn, const std::string& path) {
  write_text(path, net_to_json(bn).dump(2) + "\n");
}

DiscreteBayesNet load_net(const std::string& path) {
  return net_from_json(json::parse(read_text(path)));
}

json schema_to_json(const VariableSchema& schema) {
  json vars = json::array();
  for (const VariableSpec& v : schema.variables()) {
    json jv{{"name", v.name}, {"symbol", v.symbol}, {"states", v.states}};
    if (!v.band_edges.empty()) jv["band_edges"] = v.band_edges;
    if (!v.marginals.empty()) jv["marginals"] = v.marginals;
    vars.push_back(jv);
  }
  return json{{"variables", vars}};
}

VariableSchema schema_from_json(const json& doc) {
  VariableSchema schema;
  for (const json& jv : doc.at("variables")) {
    VariableSpec v;
    v.name = jv.at("name");
    v.symbol = jv.value("symbol", v.name);
    v.states = jv.at("states").get<std::vector<std::string>>();
    if (jv.contains("band_edges")) v.band_edges = jv["band_edges"].get<std::vector<double>>();
    if (jv.contains("marginals")) v.marginals = jv["marginals"].get<std::vector<double>>();
    schema.add(std::move(v));
  }
  return schema;
}

VariableSchema load_schema(const std::string& path) {
  return schema_from_json(json::parse(read_text(path)));
}

json effect_report_to_json(const EffectReport& r) {
  return json{{"kind", r.kind},
              {"treatment", r.treatment},
              {"outcome", r.outcome},
              {"control_state", r.control_state},
              {"treated_state", r.treated_state},
              {"outcome_states", r.outcome_states},
              {"control_dist", r.control_dist},
              {"treated_dist", r.treated_dist},
              {"delta_pp", r.delta_pp}};
}

json refutation_report_to_json(const RefutationReport& r) {
  return json{{"kind", r.kind},
              {"baseline_pp", r.baseline_pp},
              {"mean_pp", r.mean_pp},
              {"median_pp", r.median_pp},
              {"p01_pp", r.p01_pp},
              {"p99_pp", r.p99_pp},
              {"p_value", r.p_value},
              {"iterations", r.null_pp.size()},
              {"master_seed", r.master_seed},
              {"null_pp", r.null_pp}};
}

json estimand_to_json(const AdjustmentEstimand& est, const CausalDag& g) {
  const CausalDag cut = mutilate(g, est.treatment());
  json paths = json::array();
  for (const PathWitness& w : est.certificate()) {
    paths.push_back({{"path", w.path.nodes},
                     {"rendered", render_path(cut, w.path)},
                     {"blocker", w.blocker},
                     {"blocker_kind", w.blocker_kind == TripleKind::Collider ? "collider" : "noncollider"}});
  }
  return json{{"treatment", est.treatment()},
              {"outcome", est.outcome()},
              {"adjustment", std::vector<std::string>(est.adjustment().begin(), est.adjustment().end())},
              {"backdoor_paths", paths}};
}

std::string effect_report_csv(const EffectReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "state,control_p,treated_p,delta_pp\n";
  for (std::size_t i = 0; i < r.outcome_states.size(); ++i) {
    std::string state = r.outcome_states[i];
    for (char& ch : state)
      if (ch == ',') ch = ';';
    out << state << ',' << r.control_dist[i] << ',' << r.treated_dist[i] << ',' << r.delta_pp[i]
        << '\n';
  }
  return out.str();
}

std::string skeleton_log_jsonl(const SkeletonState& skeleton) {
  std::ostringstream out;
  for (const PairDecision& d : skeleton.pairs) {
    int step = 0;
    for (const ContributorStep& s : d.steps) {
      out << json{{"pair", {d.x, d.y}},
                  {"step", ++step},
                  {"contributor", s.contributor},
                  {"gain_bits", s.gain_bits},
                  {"residual_bits", s.residual_bits},
                  {"threshold_bits", s.threshold_bits},
                  {"action", "condition"}}
                 .dump()
          << '\n';
    }
    out << json{{"pair", {d.x, d.y}},
                {"step", static_cast<int>(d.steps.size()) + 1},
                {"initial_mi_bits", d.initial_mi_bits},
                {"residual_bits", d.residual_bits},
                {"threshold_bits", d.threshold_bits},
                {"contributors", d.contributors},
                {"action", d.retained ? "retain" : "drop"}}
               .dump()
        << '\n';
  }
  return out.str();
}

std::string orientation_log_jsonl(const std::vector<OrientationRecord>& log) {
  std::ostringstream out;
  for (const OrientationRecord& r : log) {
    json j{{"rule", r.rule}, {"a", r.a}, {"b", r.b}};
    if (!r.mid.empty()) j["mid"] = r.mid;
    if (r.rule == "v-structure") j["interaction_bits"] = r.interaction_bits;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace causalbn
