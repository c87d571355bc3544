#include "causalbn/discovery.hpp"

#include <algorithm>
#include <map>

#include "causalbn/mi.hpp"
#include "causalbn/nml.hpp"

namespace causalbn {

namespace {
constexpr double kTol = 1e-12;
}

void Blacklist::validate(const VariableSchema& schema) const {
  for (const auto& [tail, head] : forbidden) {
    if (!schema.can_resolve(tail)) throw SchemaMismatchError("blacklist references " + tail);
    if (!schema.can_resolve(head)) throw SchemaMismatchError("blacklist references " + head);
    if (schema.resolve(tail) == schema.resolve(head))
      throw SchemaMismatchError("blacklist entry is a self loop on " + tail);
  }
}

Blacklist Blacklist::resolved(const VariableSchema& schema) const {
  validate(schema);
  Blacklist out;
  for (const auto& [tail, head] : forbidden)
    out.forbidden.insert({schema.at(schema.resolve(tail)).name, schema.at(schema.resolve(head)).name});
  return out;
}

std::vector<std::pair<std::string, std::string>> SkeletonState::edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const PairDecision& d : pairs)
    if (d.retained) out.emplace_back(d.x, d.y);
  return out;
}

const PairDecision* SkeletonState::decision(const std::string& x, const std::string& y) const {
  const auto key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
  for (const PairDecision& d : pairs)
    if (d.x == key.first && d.y == key.second) return &d;
  return nullptr;
}

namespace {

PairDecision decide_pair(const Dataset& data, const std::string& x, const std::string& y,
                         const std::vector<std::string>& all_vars,
                         const DiscoveryOptions& opt) {
  const VariableSchema& schema = data.schema();
  const auto n = static_cast<std::int64_t>(data.rows());
  const int x_card = static_cast<int>(schema.at(schema.resolve(x)).states.size());
  const int y_card = static_cast<int>(schema.at(schema.resolve(y)).states.size());

  PairDecision d;
  d.x = x;
  d.y = y;
  d.initial_mi_bits = mutual_information(data, x, y).bits;

  std::vector<std::string> contributors;
  std::vector<int> z_cards;
  double residual = d.initial_mi_bits;
  double threshold = opt.complexity_scale * nml_complexity(n, x_card, y_card, z_cards) / n;

  for (;;) {
    if (residual <= threshold) {
      d.retained = false;
      break;
    }
    if (static_cast<int>(contributors.size()) >= opt.max_contributors) {
      d.retained = true;
      break;
    }
    // Best contributor by explained information; candidates scanned in
    // lexicographic order and accepted on strict improvement, so ties go to
    // the smaller name.
    std::string best;
    double best_gain = kTol;
    double best_residual = 0.0;
    for (const std::string& c : all_vars) {
      if (c == x || c == y) continue;
      if (std::find(contributors.begin(), contributors.end(), c) != contributors.end()) continue;
      std::vector<std::string> trial = contributors;
      trial.push_back(c);
      const double cond = conditional_mi(data, x, y, trial).bits;
      const double gain = residual - cond;
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
        best_residual = cond;
      }
    }
    if (best.empty()) {
      d.retained = true;
      break;
    }
    contributors.push_back(best);
    z_cards.push_back(static_cast<int>(schema.at(schema.resolve(best)).states.size()));
    residual = best_residual;
    threshold = opt.complexity_scale * nml_complexity(n, x_card, y_card, z_cards) / n;
    d.steps.push_back(ContributorStep{best, best_gain, residual, threshold});
  }
  d.contributors = contributors;
  d.residual_bits = residual;
  d.threshold_bits = threshold;
  return d;
}

}  // namespace

SkeletonState prune_skeleton(const Dataset& data, const Blacklist& blacklist,
                             const DiscoveryOptions& options) {
  if (data.rows() == 0) throw EmptyDatasetError("dataset has no rows");
  blacklist.validate(data.schema());

  SkeletonState state;
  for (const VariableSpec& v : data.schema().variables()) state.variables.push_back(v.name);
  std::vector<std::string> sorted_vars = state.variables;
  std::sort(sorted_vars.begin(), sorted_vars.end());

  std::vector<std::pair<std::string, std::string>> pair_list;
  for (std::size_t i = 0; i < sorted_vars.size(); ++i)
    for (std::size_t j = i + 1; j < sorted_vars.size(); ++j)
      pair_list.emplace_back(sorted_vars[i], sorted_vars[j]);

  state.pairs.resize(pair_list.size());
  if (options.exec == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(pair_list.size()); ++i)
      state.pairs[i] =
          decide_pair(data, pair_list[i].first, pair_list[i].second, sorted_vars, options);
  } else {
    for (std::size_t i = 0; i < pair_list.size(); ++i)
      state.pairs[i] =
          decide_pair(data, pair_list[i].first, pair_list[i].second, sorted_vars, options);
  }
  return state;
}

namespace {

struct OrientState {
  // kind per unordered edge {a,b} with a < b
  enum Kind { Undirected, Forward, Backward, Bidirected };  // Forward = a -> b
  std::map<std::pair<std::string, std::string>, Kind> edges;
  std::map<std::string, std::set<std::string>> adj;

  static std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  }
  bool adjacent(const std::string& a, const std::string& b) const {
    auto it = adj.find(a);
    return it != adj.end() && it->second.count(b);
  }
  bool directed(const std::string& tail, const std::string& head) const {
    auto it = edges.find(key(tail, head));
    if (it == edges.end()) return false;
    if (it->second == Forward) return tail < head;
    if (it->second == Backward) return head < tail;
    return false;
  }
  bool undirected_between(const std::string& a, const std::string& b) const {
    auto it = edges.find(key(a, b));
    return it != edges.end() && it->second == Undirected;
  }
  // Directed path tail ~> head using currently directed edges only.
  bool reaches(const std::string& from, const std::string& to) const {
    std::vector<std::string> stack{from};
    std::set<std::string> seen{from};
    while (!stack.empty()) {
      const std::string n = stack.back();
      stack.pop_back();
      if (n == to) return true;
      auto it = adj.find(n);
      if (it == adj.end()) continue;
      for (const std::string& m : it->second)
        if (directed(n, m) && seen.insert(m).second) stack.push_back(m);
    }
    return false;
  }
  void set(const std::string& a, const std::string& b, Kind k) { edges[key(a, b)] = k; }
  void set_directed(const std::string& tail, const std::string& head) {
    const auto k = key(tail, head);
    edges[k] = (tail == k.first) ? Forward : Backward;
  }
};

}  // namespace

MixedGraph orient(const SkeletonState& skeleton, const Dataset& data, const Blacklist& raw_blacklist,
                  std::vector<OrientationRecord>* log) {
  const Blacklist blacklist = raw_blacklist.resolved(data.schema());
  auto note = [&](OrientationRecord r) {
    if (log) log->push_back(std::move(r));
  };

  OrientState st;
  for (const auto& [a, b] : skeleton.edges()) {
    st.set(a, b, OrientState::Undirected);
    st.adj[a].insert(b);
    st.adj[b].insert(a);
  }

  // V-structures: for every unshielded triple a - mid - b, a negative
  // interaction information signs a collider at the mid node.
  std::map<std::pair<std::string, std::string>, std::set<std::string>> head_demand;
  std::vector<std::string> vars = skeleton.variables;
  std::sort(vars.begin(), vars.end());
  for (const std::string& mid : vars) {
    if (!st.adj.count(mid)) continue;
    std::vector<std::string> nb(st.adj[mid].begin(), st.adj[mid].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const std::string &a = nb[i], &b = nb[j];
        if (st.adjacent(a, b)) continue;
        const double ii = interaction_information(data, a, b, mid);
        if (ii < -kTol) {
          note({"v-structure", a, b, mid, ii});
          for (const std::string& tail : {a, b}) {
            if (blacklist.forbids(tail, mid)) {
              note({"blacklist-skip", tail, mid, "", ii});
              continue;
            }
            head_demand[OrientState::key(tail, mid)].insert(mid);
          }
        }
      }
    }
  }
  // head_demand maps each edge to the endpoints demanded as arrowheads;
  // demands at both ends make the edge bi-directed.
  for (auto& [edge, heads] : head_demand) {
    if (heads.size() == 2) {
      st.set(edge.first, edge.second, OrientState::Bidirected);
      note({"bidirected", edge.first, edge.second, "", 0.0});
    } else {
      const std::string& head = *heads.begin();
      const std::string tail = head == edge.first ? edge.second : edge.first;
      // A directed edge that would close a directed cycle is demoted to a
      // bi-directed edge instead of forcing an acyclic-breaking choice.
      if (st.reaches(head, tail)) {
        st.set(edge.first, edge.second, OrientState::Bidirected);
        note({"cycle-bidirected", tail, head, "", 0.0});
      } else {
        st.set_directed(tail, head);
      }
    }
  }

  // Meek propagation (rules 1-3). Orientations that would be blacklisted are
  // skipped; an orientation whose reverse is already set marks a conflict and
  // yields a bi-directed edge; one that would close a cycle is flipped, per
  // the acyclicity rule.
  auto try_orient = [&](const std::string& tail, const std::string& head,
                        const char* rule) -> bool {
    if (!st.undirected_between(tail, head)) return false;
    if (blacklist.forbids(tail, head)) {
      note({"blacklist-skip", tail, head, "", 0.0});
      return false;
    }
    if (st.reaches(head, tail)) {
      // orienting tail -> head would close a directed cycle; orient the other
      // way when allowed, otherwise leave undirected
      if (!blacklist.forbids(head, tail) && !st.reaches(tail, head)) {
        st.set_directed(head, tail);
        note({rule, head, tail, "", 0.0});
        return true;
      }
      note({"conflict-undirected", tail, head, "", 0.0});
      return false;
    }
    st.set_directed(tail, head);
    note({rule, tail, head, "", 0.0});
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const std::string& b : vars) {
      if (!st.adj.count(b)) continue;
      const std::vector<std::string> nb(st.adj[b].begin(), st.adj[b].end());
      for (const std::string& c : nb) {
        if (!st.undirected_between(b, c)) continue;
        // Meek rule 1: a -> b - c with a, c non-adjacent.
        for (const std::string& a : nb) {
          if (a == c || !st.directed(a, b) || st.adjacent(a, c)) continue;
          changed |= try_orient(b, c, "meek1");
          break;
        }
        if (!st.undirected_between(b, c)) continue;
        // Meek rule 2: b -> w -> c with b - c.
        for (const std::string& w : nb) {
          if (w == c) continue;
          if (st.directed(b, w) && st.directed(w, c)) {
            changed |= try_orient(b, c, "meek2");
            break;
          }
        }
        if (!st.undirected_between(b, c)) continue;
        // Meek rule 3: b - c, b - w1, b - w2, w1 -> c, w2 -> c, w1,w2 non-adj.
        std::vector<std::string> spokes;
        for (const std::string& w : nb)
          if (st.undirected_between(b, w) && st.directed(w, c)) spokes.push_back(w);
        bool fired = false;
        for (std::size_t i = 0; i < spokes.size() && !fired; ++i)
          for (std::size_t j = i + 1; j < spokes.size() && !fired; ++j)
            if (!st.adjacent(spokes[i], spokes[j])) {
              changed |= try_orient(b, c, "meek3");
              fired = true;
            }
      }
    }
  }

  MixedGraph out;
  for (const std::string& v : skeleton.variables) out.add_node(v, true);
  for (const auto& [edge, kind] : st.edges) {
    switch (kind) {
      case OrientState::Undirected:
        out.add_edge(edge.first, EdgeKind::Undirected, edge.second);
        break;
      case OrientState::Bidirected:
        out.add_edge(edge.first, EdgeKind::Bidirected, edge.second);
        break;
      case OrientState::Forward:
        out.add_edge(edge.first, EdgeKind::Directed, edge.second);
        break;
      case OrientState::Backward:
        out.add_edge(edge.second, EdgeKind::Directed, edge.first);
        break;
    }
  }
  return out;
}

DiscoveryResult discover(const Dataset& data, const Blacklist& blacklist,
                         const DiscoveryOptions& options) {
  DiscoveryResult result;
  result.skeleton = prune_skeleton(data, blacklist, options);
  result.graph = orient(result.skeleton, data, blacklist, &result.orientation_log);
  return result;
}

}  // namespace causalbn
