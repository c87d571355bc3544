#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "causalbn/errors.hpp"

namespace causalbn {

enum class EdgeKind { Directed, Bidirected, Undirected };

struct Node {
  std::string name;
  bool observed = true;
  friend bool operator==(const Node&, const Node&) = default;
};

// For Bidirected/Undirected edges the (tail, head) order carries no meaning;
// it is stored canonically with tail < head.
struct Edge {
  std::string tail;
  std::string head;
  EdgeKind kind = EdgeKind::Directed;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Mixed graph with directed, bi-directed and undirected edges. At most one
// edge per unordered node pair, no self loops. Immutable once built up;
// all query methods are const and safe to call concurrently.
class MixedGraph {
 public:
  void add_node(const std::string& name, bool observed = true);
  void add_edge(const std::string& tail, EdgeKind kind, const std::string& head);

  bool has_node(const std::string& name) const { return index_.count(name) != 0; }
  bool is_observed(const std::string& name) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(const std::string& a, const std::string& b) const;
  std::optional<Edge> edge_between(const std::string& a, const std::string& b) const;

  std::size_t count_edges(EdgeKind kind) const;

 private:
  int require(const std::string& name) const;

  std::vector<Node> nodes_;
  std::map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::set<std::pair<std::string, std::string>> pairs_;  // canonical (min,max)
};

// Directed acyclic graph. Construction validates referential integrity and
// acyclicity (CycleError). Values are immutable after construction.
class CausalDag {
 public:
  CausalDag() = default;
  CausalDag(std::vector<Node> nodes, const std::vector<std::pair<std::string, std::string>>& edges);

  bool has_node(const std::string& name) const { return index_.count(name) != 0; }
  int index_of(const std::string& name) const;  // UnknownNodeError
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(int i) const { return nodes_[i]; }
  bool is_observed(const std::string& name) const { return nodes_[index_of(name)].observed; }

  std::span<const int> parents(int i) const { return parents_[i]; }
  std::span<const int> children(int i) const { return children_[i]; }
  std::vector<std::string> parents_of(const std::string& name) const;
  std::vector<std::string> children_of(const std::string& name) const;

  bool has_edge(const std::string& tail, const std::string& head) const;
  std::vector<std::pair<std::string, std::string>> edge_list() const;
  std::size_t edge_count() const;

  // Node names in a valid topological order (parents before children).
  std::vector<std::string> topological_order() const;

 private:
  std::vector<Node> nodes_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
};

// A simple path, stored as the visited node sequence. Edge orientations are
// recovered from the host graph when needed.
struct Path {
  std::vector<std::string> nodes;
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

// Renders a path with arrows taken from the dag, e.g. "V7 <- V8 <- U2 -> Y".
std::string render_path(const CausalDag& g, const Path& p);

// Replaces every bi-directed edge X<->Y with a fresh latent parent U -> X,
// U -> Y (U named U1, U2, ... skipping taken names, in canonical edge order).
// Undirected edges must have been resolved or dropped beforehand.
CausalDag expand_latents(const MixedGraph& g);

// G with every edge out of `treatment` removed.
CausalDag mutilate(const CausalDag& g, const std::string& treatment);

// Transitive closure over directed edges, excluding the node itself.
std::set<std::string> descendants(const CausalDag& g, const std::string& node);

// Induced subgraph on the observed nodes (latents and their edges dropped).
CausalDag observed_projection(const CausalDag& g);

}  // namespace causalbn
