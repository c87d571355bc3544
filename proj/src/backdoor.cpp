#include "causalbn/backdoor.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace causalbn {

namespace {

// Sorted undirected-sense neighbour indices.
std::vector<int> neighbours(const CausalDag& g, int n) {
  std::vector<int> out(g.parents(n).begin(), g.parents(n).end());
  out.insert(out.end(), g.children(n).begin(), g.children(n).end());
  std::sort(out.begin(), out.end());
  return out;
}

void dfs_paths(const CausalDag& g, int current, int target, std::vector<int>& stack,
               std::vector<bool>& on_stack, std::vector<Path>& out) {
  if (current == target) {
    Path p;
    for (int n : stack) p.nodes.push_back(g.node(n).name);
    out.push_back(std::move(p));
    return;
  }
  for (int next : neighbours(g, current)) {
    if (on_stack[next]) continue;
    stack.push_back(next);
    on_stack[next] = true;
    dfs_paths(g, next, target, stack, on_stack, out);
    on_stack[next] = false;
    stack.pop_back();
  }
}

}  // namespace

std::vector<Path> enumerate_backdoor_paths(const CausalDag& g, const std::string& x,
                                           const std::string& y) {
  const int xi = g.index_of(x);
  const int yi = g.index_of(y);
  if (xi == yi) throw Error("degenerate query: x == y");

  std::vector<Path> out;
  std::vector<bool> on_stack(g.size(), false);
  std::vector<int> stack{xi};
  on_stack[xi] = true;
  // First hop restricted to edges whose head is x.
  for (int p : g.parents(xi)) {
    stack.push_back(p);
    on_stack[p] = true;
    dfs_paths(g, p, yi, stack, on_stack, out);
    on_stack[p] = false;
    stack.pop_back();
  }
  std::sort(out.begin(), out.end());
  return out;
}

TripleKind classify_triple(const CausalDag& g, const Path& p, int index) {
  if (index <= 0 || index >= static_cast<int>(p.nodes.size()) - 1)
    throw IndexError("triple index must be interior to the path");
  const std::string& left = p.nodes[index - 1];
  const std::string& mid = p.nodes[index];
  const std::string& right = p.nodes[index + 1];
  const bool in_from_left = g.has_edge(left, mid);
  const bool in_from_right = g.has_edge(right, mid);
  if (in_from_left && in_from_right) return TripleKind::Collider;
  if (!in_from_left && !in_from_right) return TripleKind::Fork;
  return TripleKind::Chain;
}

bool is_blocked(const CausalDag& g, const Path& p, const std::set<std::string>& z) {
  for (int i = 1; i + 1 < static_cast<int>(p.nodes.size()); ++i) {
    const std::string& mid = p.nodes[i];
    if (classify_triple(g, p, i) == TripleKind::Collider) {
      if (z.count(mid)) continue;
      const std::set<std::string> desc = descendants(g, mid);
      bool activated = false;
      for (const std::string& d : desc)
        if (z.count(d)) {
          activated = true;
          break;
        }
      if (!activated) return true;  // unconditioned collider blocks
    } else if (z.count(mid)) {
      return true;  // conditioned non-collider blocks
    }
  }
  return false;
}

bool d_separated(const CausalDag& g, const std::string& x, const std::string& y,
                 const std::set<std::string>& z) {
  const int xi = g.index_of(x);
  const int yi = g.index_of(y);
  if (xi == yi) throw Error("degenerate query: x == y");
  if (z.count(x) || z.count(y)) throw Error("conditioning set must exclude x and y");

  std::vector<bool> in_z(g.size(), false);
  for (const std::string& name : z) in_z[g.index_of(name)] = true;

  // Nodes with a descendant in z (or in z themselves): these activate
  // colliders.
  std::vector<bool> anc_z(g.size(), false);
  {
    std::deque<int> queue;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (in_z[i]) {
        anc_z[i] = true;
        queue.push_back(static_cast<int>(i));
      }
    while (!queue.empty()) {
      const int n = queue.front();
      queue.pop_front();
      for (int p : g.parents(n))
        if (!anc_z[p]) {
          anc_z[p] = true;
          queue.push_back(p);
        }
    }
  }

  // Active-trail reachability over (node, direction) states; direction Up
  // means the node was entered from a child, Down from a parent.
  enum Dir { Up = 0, Down = 1 };
  std::vector<std::array<bool, 2>> visited(g.size(), {false, false});
  std::deque<std::pair<int, Dir>> queue{{xi, Up}};
  while (!queue.empty()) {
    auto [n, dir] = queue.front();
    queue.pop_front();
    if (visited[n][dir]) continue;
    visited[n][dir] = true;
    if (n == yi && !in_z[n]) return false;  // reachable via an active trail

    if (dir == Up && !in_z[n]) {
      for (int p : g.parents(n)) queue.emplace_back(p, Up);
      for (int c : g.children(n)) queue.emplace_back(c, Down);
    } else if (dir == Down) {
      if (!in_z[n])
        for (int c : g.children(n)) queue.emplace_back(c, Down);
      if (anc_z[n])
        for (int p : g.parents(n)) queue.emplace_back(p, Up);
    }
  }
  return true;
}

BackdoorCheck check_backdoor(const CausalDag& g, const std::string& x, const std::string& y,
                             const std::set<std::string>& z) {
  BackdoorCheck result;
  const std::set<std::string> desc_x = descendants(g, x);
  for (const std::string& name : z) {
    g.index_of(name);
    if (name == x || name == y) {
      result.bad_node = name;
      return result;
    }
    if (!g.is_observed(name)) {
      result.bad_node = name;
      return result;
    }
    if (desc_x.count(name)) {
      result.bad_node = name;
      return result;
    }
  }

  const CausalDag cut = mutilate(g, x);
  for (const Path& p : enumerate_backdoor_paths(cut, x, y)) {
    std::optional<PathWitness> witness;
    for (int i = 1; i + 1 < static_cast<int>(p.nodes.size()); ++i) {
      const std::string& mid = p.nodes[i];
      const TripleKind kind = classify_triple(cut, p, i);
      if (kind == TripleKind::Collider) {
        if (z.count(mid)) continue;
        bool activated = false;
        for (const std::string& d : descendants(cut, mid))
          if (z.count(d)) {
            activated = true;
            break;
          }
        if (!activated) {
          witness = PathWitness{p, mid, kind};
          break;
        }
      } else if (z.count(mid)) {
        witness = PathWitness{p, mid, kind};
        break;
      }
    }
    if (!witness) {
      result.open_path = p;
      result.certificate.clear();
      return result;
    }
    result.certificate.push_back(std::move(*witness));
  }
  result.valid = true;
  return result;
}

std::vector<std::set<std::string>> find_adjustment_sets(const CausalDag& g, const std::string& x,
                                                        const std::string& y, int max_size) {
  g.index_of(x);
  g.index_of(y);
  if (x == y) throw Error("degenerate query: x == y");

  const std::set<std::string> desc_x = descendants(g, x);
  std::vector<std::string> candidates;
  for (const Node& n : g.nodes()) {
    if (!n.observed || n.name == x || n.name == y) continue;
    if (desc_x.count(n.name)) continue;
    candidates.push_back(n.name);
  }
  std::sort(candidates.begin(), candidates.end());

  const CausalDag cut = mutilate(g, x);
  std::vector<std::set<std::string>> out;

  // Subsets in (cardinality, lexicographic) order via combination indices.
  const int m = static_cast<int>(candidates.size());
  for (int k = 0; k <= std::min(max_size, m); ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::set<std::string> subset;
      for (int i : idx) subset.insert(candidates[i]);
      if (d_separated(cut, x, y, subset)) out.push_back(subset);
      if (k == 0) break;
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == m - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

}  // namespace causalbn
