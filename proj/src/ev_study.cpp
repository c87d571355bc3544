#include "causalbn/ev_study.hpp"

#include <cmath>

#include "causalbn/infer.hpp"

namespace causalbn {

VariableSchema ev_study_schema() {
  VariableSchema s;
  s.add({"ev_intent",
         "Y",
         {"Already own", "Thinking to buy soon", "Thinking to buy in future", "Not considering"},
         {},
         {0.0485, 0.0462, 0.4149, 0.4904}});
  s.add({"income",
         "V1",
         {"<6000", "6001-10000", "10001-15000", "15001-20000", "20001-25000", "25001-30000",
          "30001-40000", ">40000"},
         {},
         {0.0202, 0.0364, 0.0786, 0.1358, 0.1079, 0.1064, 0.1602, 0.3546}});
  s.add({"vehicles", "V2", {"No car", "One car", "Two or more"}, {}, {0.0719, 0.6157, 0.3124}});
  s.add({"adults", "V3", {"1", "2", "3", "4", ">=5"}, {}, {0.3668, 0.5400, 0.0705, 0.0211, 0.0017}});
  s.add({"children", "V4", {"0", "1", "2", "3", ">=4"}, {}, {0.7764, 0.1149, 0.0871, 0.0161, 0.0055}});
  s.add({"composition",
         "V5",
         {"Single adult", "Small - multiple adults", "Single parent", "Small - family",
          "Large - family", "Large - multiple adults", "Small - old adults", "Single pensioner"},
         {},
         {0.1759, 0.2149, 0.0901, 0.1029, 0.0289, 0.0615, 0.2030, 0.1227}});
  s.add({"urban_rural", "V6", {"Urban", "Rural"}, {}, {0.8069, 0.1931}});
  s.add({"parking", "V7", {"Off-street", "On-street"}, {}, {0.6516, 0.3484}});
  s.add({"dwelling_type",
         "V8",
         {"Detached", "Semi-detached", "Terraced", "Tenement flat", "4-in-a-block flat",
          "Tower/slab flat", "Converted flat"},
         {},
         {0.2573, 0.2276, 0.2073, 0.1657, 0.0765, 0.0327, 0.0329}});
  s.add({"dwelling_age",
         "V9",
         {"<1919", "1919-1944", "1945-1964", "1965-1982", "1983-2002", ">2002"},
         {},
         {0.2114, 0.1093, 0.1615, 0.2214, 0.1493, 0.1471}});
  s.add({"workplace_charging",
         "V10",
         {"<20", "21-40", "41-60", "61-80", ">80"},
         {20.0, 40.0, 60.0, 80.0},
         {0.0821, 0.3346, 0.4562, 0.0910, 0.0361}});
  s.add({"public_charging",
         "V11",
         {"<50", "51-100", "101-150", "151-200", ">200"},
         {50.0, 100.0, 150.0, 200.0},
         {0.2048, 0.5949, 0.1537, 0.0438, 0.0028}});
  s.add({"working_status", "V12", {"One or more working", "None working"}, {}, {0.6664, 0.3336}});
  s.add({"tenancy",
         "V13",
         {"Owned", "Part mortgage part rent", "Rented"},
         {},
         {0.7354, 0.0041, 0.2605}});
  s.add({"local_authority",
         "V14",
         {"South Ayrshire",     "South Lanarkshire", "Stirling",
          "West Dunbartonshire", "West Lothian",      "Na h-Eileanan Siar",
          "Aberdeen City",       "Aberdeenshire",     "Angus",
          "Argyll and Bute",     "Scottish Borders",  "Clackmannanshire",
          "Dumfries and Galloway", "Dundee City",     "East Ayrshire",
          "East Dunbartonshire", "East Lothian",      "East Renfrewshire",
          "City of Edinburgh",   "Falkirk",           "Fife",
          "Glasgow City",        "Highland",          "Inverclyde",
          "Midlothian",          "Moray",             "North Ayrshire",
          "North Lanarkshire",   "Orkney Islands",    "Perth and Kinross",
          "Renfrewshire",        "Shetland Islands"},
         {},
         {0.0266, 0.0638, 0.0178, 0.0205, 0.0383, 0.0078, 0.0466, 0.0433,
          0.0216, 0.0211, 0.0228, 0.0072, 0.0266, 0.0244, 0.0250, 0.0183,
          0.0182, 0.0117, 0.1077, 0.0327, 0.0527, 0.1038, 0.0411, 0.0128,
          0.0172, 0.0183, 0.0178, 0.0594, 0.0028, 0.0333, 0.0316, 0.0072}});
  return s;
}

namespace {

const std::vector<std::pair<std::string, std::string>>& observed_core_edges() {
  static const std::vector<std::pair<std::string, std::string>> edges = {
      {"V5", "V1"},  {"V5", "V12"}, {"V5", "V13"}, {"V5", "V2"}, {"V5", "V8"},
      {"V12", "V1"}, {"V1", "Y"},   {"V1", "V2"},  {"V1", "V13"}, {"V1", "V8"},
      {"V13", "V8"}, {"V9", "V8"},  {"V9", "V7"},  {"V8", "V7"},  {"V7", "Y"},
      {"V7", "V2"},
  };
  return edges;
}

}  // namespace

MixedGraph ev_study_mag() {
  MixedGraph g;
  for (const char* n : {"Y", "V1", "V2", "V5", "V7", "V8", "V9", "V12", "V13"}) g.add_node(n);
  for (const auto& [tail, head] : observed_core_edges())
    if (!(tail == "V1" && head == "V2"))  // carried by the bi-directed mark below
      g.add_edge(tail, EdgeKind::Directed, head);
  g.add_edge("V1", EdgeKind::Bidirected, "V2");
  g.add_edge("V8", EdgeKind::Bidirected, "Y");
  return g;
}

CausalDag ev_study_dag() {
  std::vector<Node> nodes;
  for (const char* n : {"Y", "V1", "V2", "V5", "V7", "V8", "V9", "V12", "V13"})
    nodes.push_back(Node{n, true});
  nodes.push_back(Node{"U1", false});
  nodes.push_back(Node{"U2", false});
  auto edges = observed_core_edges();
  edges.insert(edges.end(), {{"U1", "V1"}, {"U1", "V2"}, {"U2", "V8"}, {"U2", "Y"}});
  return CausalDag(std::move(nodes), edges);
}

Blacklist ev_study_blacklist() {
  Blacklist b;
  b.forbidden.insert({"V1", "V12"});  // income never causes working status
  return b;
}

namespace {

struct EdgeEffect {
  const char* parent;
  const char* child;
  double strength;  // sign couples high parent states to high (+) or low (-) child states
};

// Bilinear log-linear interaction on centred, scaled state indices. The
// signs follow the semantic state orders above (e.g. Y index 0 = Already
// own, V7 index 0 = Off-street, V8 index 0 = Detached).
const EdgeEffect kEffects[] = {
    {"V5", "V1", 1.2},  {"V5", "V12", 1.4}, {"V5", "V13", 0.9}, {"V5", "V2", 0.8},
    {"V5", "V8", 0.7},  {"V12", "V1", -1.8}, {"V1", "Y", -1.6},  {"V1", "V2", 1.3},
    {"V1", "V13", -1.1}, {"V1", "V8", -1.3}, {"V13", "V8", 1.0}, {"V9", "V8", 0.8},
    {"V9", "V7", 0.7},  {"V8", "V7", 2.2},  {"V7", "Y", 0.9},   {"V7", "V2", -0.9},
    {"U1", "V1", 1.5},  {"U1", "V2", 1.2},  {"U2", "V8", -1.7}, {"U2", "Y", -1.5},
};

double centred(int state, int card) {
  if (card <= 1) return 0.0;
  return static_cast<double>(state) / static_cast<double>(card - 1) - 0.5;
}

DiscreteBayesNet build_network(const CausalDag& dag, const std::vector<VariableCard>& cards,
                               const std::vector<std::vector<double>>& base) {
  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const std::string& name = dag.node(static_cast<int>(i)).name;
    Cpt c;
    c.child = name;
    c.parents = dag.parents_of(name);
    for (const std::string& p : c.parents)
      c.parent_cards.push_back(static_cast<int>(cards[dag.index_of(p)].states.size()));
    c.child_card = static_cast<int>(cards[i].states.size());

    std::vector<double> strengths(c.parents.size(), 0.0);
    for (const EdgeEffect& e : kEffects)
      for (std::size_t p = 0; p < c.parents.size(); ++p)
        if (c.parents[p] == e.parent && name == e.child) strengths[p] = e.strength;

    c.table.resize(c.rows() * c.child_card);
    std::vector<int> pstate(c.parents.size(), 0);
    for (std::size_t r = 0; r < c.rows(); ++r) {
      double row_total = 0.0;
      for (int v = 0; v < c.child_card; ++v) {
        double logit = 0.0;
        for (std::size_t p = 0; p < c.parents.size(); ++p)
          logit += strengths[p] * centred(pstate[p], c.parent_cards[p]) * 4.0 *
                   centred(v, c.child_card);
        c.table[r * c.child_card + v] = base[i][v] * std::exp(logit);
        row_total += c.table[r * c.child_card + v];
      }
      for (int v = 0; v < c.child_card; ++v) c.table[r * c.child_card + v] /= row_total;
      for (int p = static_cast<int>(pstate.size()) - 1; p >= 0; --p) {
        if (++pstate[p] < c.parent_cards[p]) break;
        pstate[p] = 0;
      }
    }
    cpts.push_back(std::move(c));
  }
  return DiscreteBayesNet(dag, cards, std::move(cpts));
}

DiscreteBayesNet calibrate_network() {
  const CausalDag dag = ev_study_dag();
  const VariableSchema schema = ev_study_schema();

  std::vector<VariableCard> cards;
  std::vector<std::vector<double>> base;
  std::vector<std::vector<double>> target;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    const Node& n = dag.node(static_cast<int>(i));
    if (n.observed) {
      const VariableSpec& spec = schema.at(schema.resolve(n.name));
      cards.push_back(VariableCard{n.name, spec.states});
      std::vector<double> t = spec.marginals;
      double sum = 0.0;
      for (double v : t) sum += v;
      for (double& v : t) v /= sum;
      base.push_back(t);
      target.push_back(t);
    } else {
      cards.push_back(VariableCard{n.name, {"u0", "u1"}});
      base.push_back({0.5, 0.5});
      target.push_back({});  // latents are free
    }
  }

  DiscreteBayesNet bn = build_network(dag, cards, base);
  for (int sweep = 0; sweep < 400; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i < dag.size(); ++i) {
      if (target[i].empty()) continue;
      const std::vector<double> m = marginal(bn, dag.node(static_cast<int>(i)).name).values();
      double sum = 0.0;
      for (std::size_t v = 0; v < m.size(); ++v) {
        worst = std::max(worst, std::abs(m[v] - target[i][v]));
        base[i][v] *= target[i][v] / std::max(m[v], 1e-12);
        sum += base[i][v];
      }
      for (double& b : base[i]) b /= sum;
      bn = build_network(dag, cards, base);
    }
    if (worst < 1e-7) break;
  }
  return bn;
}

}  // namespace

const DiscreteBayesNet& ev_study_network() {
  static const DiscreteBayesNet bn = calibrate_network();
  return bn;
}

}  // namespace causalbn
