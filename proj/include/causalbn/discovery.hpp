#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalbn/dataset.hpp"
#include "causalbn/graph.hpp"
#include "causalbn/parallel.hpp"

namespace causalbn {

// Prohibited causal directions (tail -> head), by variable name or symbol.
struct Blacklist {
  std::set<std::pair<std::string, std::string>> forbidden;

  bool forbids(const std::string& tail, const std::string& head) const {
    return forbidden.count({tail, head}) != 0;
  }
  // Every entry must reference a schema variable.
  void validate(const VariableSchema& schema) const;
  // Rewrites symbols to canonical column names.
  Blacklist resolved(const VariableSchema& schema) const;
};

struct ContributorStep {
  std::string contributor;
  double gain_bits = 0.0;       // information explained away by this contributor
  double residual_bits = 0.0;   // I(X;Y|S) after accepting it
  double threshold_bits = 0.0;  // C_NML(X,Y|S)/n after accepting it
};

// Full audit record for one variable pair of the skeleton search.
struct PairDecision {
  std::string x, y;  // x < y
  double initial_mi_bits = 0.0;
  std::vector<ContributorStep> steps;
  std::vector<std::string> contributors;
  double residual_bits = 0.0;
  double threshold_bits = 0.0;
  bool retained = false;
};

struct SkeletonState {
  std::vector<std::string> variables;  // schema order
  std::vector<PairDecision> pairs;     // canonical pair order

  std::vector<std::pair<std::string, std::string>> edges() const;
  const PairDecision* decision(const std::string& x, const std::string& y) const;
};

struct DiscoveryOptions {
  int max_contributors = 3;
  double complexity_scale = 1.0;  // multiplies C_NML; > 1 prunes harder
  ExecMode exec = kDefaultExec;
};

struct OrientationRecord {
  std::string rule;  // "v-structure", "meek1".."meek3", "bidirected", "cycle-bidirected",
                     // "blacklist-skip", "conflict-undirected"
  std::string a, b, mid;
  double interaction_bits = 0.0;
};

struct DiscoveryResult {
  MixedGraph graph;
  SkeletonState skeleton;
  std::vector<OrientationRecord> orientation_log;
};

// Greedy contributor search per pair, starting from the fully connected
// skeleton: contributors are accreted while they explain information away
// (positive conditional interaction), and the edge is dropped as soon as the
// residual conditional MI falls below the scaled NML threshold. Pairs are
// scored independently (and in parallel under ExecMode::Parallel) with
// deterministic lexicographic tie-breaking, so results do not depend on
// scheduling.
SkeletonState prune_skeleton(const Dataset& data, const Blacklist& blacklist,
                             const DiscoveryOptions& options = {});

// V-structure orientation by negative interaction information, contradictory
// arrowheads resolved as bi-directed edges, then Meek propagation. Never
// emits a blacklisted direction; unresolved edges stay undirected.
MixedGraph orient(const SkeletonState& skeleton, const Dataset& data, const Blacklist& blacklist,
                  std::vector<OrientationRecord>* log = nullptr);

DiscoveryResult discover(const Dataset& data, const Blacklist& blacklist,
                         const DiscoveryOptions& options = {});

}  // namespace causalbn
