#pragma once

// Test-side oracles, deliberately independent of the library's inference
// paths: they enumerate the full joint from CPT products directly.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "causalbn/bayesnet.hpp"
#include "causalbn/rng.hpp"

namespace testutil {

using namespace causalbn;

inline std::vector<int> net_cards(const DiscreteBayesNet& bn) {
  std::vector<int> cards;
  for (std::size_t i = 0; i < bn.size(); ++i)
    cards.push_back(static_cast<int>(bn.card(static_cast<int>(i)).states.size()));
  return cards;
}

// P(assignment) as a plain CPT product over integer states.
inline double joint_of(const DiscreteBayesNet& bn, const std::vector<int>& state) {
  double p = 1.0;
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const Cpt& c = bn.cpt(static_cast<int>(i));
    std::vector<int> ps;
    for (const std::string& parent : c.parents) ps.push_back(state[bn.var_index(parent)]);
    p *= c.p(c.row_of(ps), state[i]);
  }
  return p;
}

template <typename Body>
void for_each_assignment(const std::vector<int>& cards, const Body& body) {
  std::vector<int> state(cards.size(), 0);
  for (;;) {
    body(state);
    int i = static_cast<int>(cards.size()) - 1;
    for (; i >= 0; --i) {
      if (++state[i] < cards[i]) break;
      state[i] = 0;
    }
    if (i < 0) break;
  }
}

// Exhaustive-enumeration P(query | evidence); the oracle for variable
// elimination. Query result indexed like a dense table over the query vars
// in ascending net order (matching Factor's layout).
inline std::vector<double> enumerate_conditional(const DiscreteBayesNet& bn,
                                                 const std::vector<std::string>& query,
                                                 const std::map<std::string, std::string>& evidence) {
  const std::vector<int> cards = net_cards(bn);
  std::vector<int> qids;
  for (const std::string& q : query) qids.push_back(bn.var_index(q));
  std::sort(qids.begin(), qids.end());
  std::map<int, int> estate;
  for (const auto& [name, label] : evidence) {
    const int v = bn.var_index(name);
    estate[v] = bn.state_index(v, label);
  }
  std::size_t cells = 1;
  for (int q : qids) cells *= static_cast<std::size_t>(cards[q]);
  std::vector<double> table(cells, 0.0);
  for_each_assignment(cards, [&](const std::vector<int>& state) {
    for (const auto& [v, s] : estate)
      if (state[v] != s) return;
    std::size_t idx = 0;
    for (int q : qids) idx = idx * cards[q] + state[q];
    table[idx] += joint_of(bn, state);
  });
  double total = 0.0;
  for (double v : table) total += v;
  for (double& v : table) v /= total;
  return table;
}

// Truncated-factorization intervention: fix x, drop its CPT factor, sum out
// everything but y. The oracle for back-door adjustment.
inline std::vector<double> surgery_intervention(const DiscreteBayesNet& bn, const std::string& x,
                                                const std::string& x_value, const std::string& y) {
  const std::vector<int> cards = net_cards(bn);
  const int xi = bn.var_index(x);
  const int yi = bn.var_index(y);
  const int xs = bn.state_index(xi, x_value);
  std::vector<double> dist(cards[yi], 0.0);
  for_each_assignment(cards, [&](const std::vector<int>& state) {
    if (state[xi] != xs) return;
    double p = 1.0;
    for (std::size_t i = 0; i < bn.size(); ++i) {
      if (static_cast<int>(i) == xi) continue;  // the severed mechanism
      const Cpt& c = bn.cpt(static_cast<int>(i));
      std::vector<int> ps;
      for (const std::string& parent : c.parents) ps.push_back(state[bn.var_index(parent)]);
      p *= c.p(c.row_of(ps), state[i]);
    }
    dist[state[yi]] += p;
  });
  return dist;
}

struct RandomNetOptions {
  int min_nodes = 3;
  int max_nodes = 6;
  int max_card = 4;
  int max_parents = 8;
  double edge_prob = 0.4;
  std::size_t max_joint_cells = 4096;  // <= 12 binary-equivalent dimensions
  double cpt_floor = 0.05;             // keeps rows bounded away from zero
};

inline DiscreteBayesNet random_net(Rng& rng, const RandomNetOptions& opt = {}) {
  for (;;) {
    const int n = opt.min_nodes + static_cast<int>(rng.uniform_index(opt.max_nodes - opt.min_nodes + 1));
    std::vector<int> cards(n);
    std::size_t cells = 1;
    for (int i = 0; i < n; ++i) {
      cards[i] = 2 + static_cast<int>(rng.uniform_index(opt.max_card - 1));
      cells *= static_cast<std::size_t>(cards[i]);
    }
    if (cells > opt.max_joint_cells) continue;

    std::vector<Node> nodes;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
      names.push_back("N" + std::to_string(i));
      nodes.push_back(Node{names.back(), true});
    }
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<int> indegree(n, 0);
    for (int t = 0; t < n; ++t)
      for (int h = t + 1; h < n; ++h)
        if (indegree[h] < opt.max_parents && rng.uniform() < opt.edge_prob) {
          edges.emplace_back(names[t], names[h]);
          ++indegree[h];
        }
    CausalDag dag(nodes, edges);

    std::vector<VariableCard> vcards;
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> states;
      for (int s = 0; s < cards[i]; ++s) states.push_back("s" + std::to_string(s));
      vcards.push_back(VariableCard{names[i], states});
    }
    std::vector<Cpt> cpts;
    for (int i = 0; i < n; ++i) {
      Cpt c;
      c.child = names[i];
      c.parents = dag.parents_of(names[i]);
      for (const std::string& p : c.parents) c.parent_cards.push_back(cards[dag.index_of(p)]);
      c.child_card = cards[i];
      c.table.resize(c.rows() * c.child_card);
      for (std::size_t r = 0; r < c.rows(); ++r) {
        double total = 0.0;
        for (int v = 0; v < c.child_card; ++v) {
          const double w = opt.cpt_floor + rng.uniform();
          c.table[r * c.child_card + v] = w;
          total += w;
        }
        for (int v = 0; v < c.child_card; ++v) c.table[r * c.child_card + v] /= total;
      }
      cpts.push_back(std::move(c));
    }
    return DiscreteBayesNet(std::move(dag), std::move(vcards), std::move(cpts));
  }
}

// Schema/dataset builders for hand-crafted count tables.
inline std::shared_ptr<VariableSchema> make_schema(
    const std::vector<std::pair<std::string, int>>& vars) {
  auto schema = std::make_shared<VariableSchema>();
  for (const auto& [name, card] : vars) {
    std::vector<std::string> states;
    for (int s = 0; s < card; ++s) states.push_back(std::to_string(s));
    schema->add(VariableSpec{name, name, states, {}, {}});
  }
  return schema;
}

inline Dataset from_rows(std::shared_ptr<const VariableSchema> schema,
                         const std::vector<std::pair<std::vector<std::int32_t>, int>>& rows) {
  Dataset d(std::move(schema));
  for (const auto& [row, count] : rows)
    for (int i = 0; i < count; ++i) d.append_row(row);
  return d;
}

}  // namespace testutil
