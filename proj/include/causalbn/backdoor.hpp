#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causalbn/graph.hpp"

namespace causalbn {

enum class TripleKind { Chain, Fork, Collider };

// All simple paths from x to y whose first edge points into x, in the graph
// as given (the caller mutilates first when after back-door paths proper).
// Canonical lexicographic order by node sequence.
std::vector<Path> enumerate_backdoor_paths(const CausalDag& g, const std::string& x,
                                           const std::string& y);

// Pattern at the interior node p.nodes[index]. Requires 0 < index < len-1.
TripleKind classify_triple(const CausalDag& g, const Path& p, int index);

// True iff some interior non-collider is in z, or some interior collider has
// neither itself nor any descendant in z.
bool is_blocked(const CausalDag& g, const Path& p, const std::set<std::string>& z);

// True iff every path between x and y is blocked by z. Implemented as
// active-trail reachability, independent of the path-enumeration route.
bool d_separated(const CausalDag& g, const std::string& x, const std::string& y,
                 const std::set<std::string>& z);

// All sets of observed nodes of size <= max_size, containing no descendant of
// x, that d-separate x and y in mutilate(g, x). Sorted by cardinality then
// lexicographically.
std::vector<std::set<std::string>> find_adjustment_sets(const CausalDag& g, const std::string& x,
                                                        const std::string& y, int max_size = 3);

// One back-door path together with the node that blocks it under a given set.
struct PathWitness {
  Path path;
  std::string blocker;
  TripleKind blocker_kind = TripleKind::Chain;
};

struct BackdoorCheck {
  bool valid = false;
  std::vector<PathWitness> certificate;  // one witness per back-door path when valid
  std::optional<Path> open_path;         // first open path (canonical order) when invalid
  std::optional<std::string> bad_node;   // offending z member (descendant of x / latent / x / y)
};

// Full back-door criterion for adjustment set z on treatment x, outcome y:
// no member of z is a descendant of x, all members observed, and z blocks
// every back-door path in the mutilated graph.
BackdoorCheck check_backdoor(const CausalDag& g, const std::string& x, const std::string& y,
                             const std::set<std::string>& z);

}  // namespace causalbn
