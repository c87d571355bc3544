#include "causalbn/graph.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace causalbn {

namespace {

std::pair<std::string, std::string> canonical_pair(const std::string& a, const std::string& b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void MixedGraph::add_node(const std::string& name, bool observed) {
  if (index_.count(name)) throw Error("duplicate node name: " + name);
  index_[name] = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{name, observed});
}

int MixedGraph::require(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownNodeError("unknown node: " + name);
  return it->second;
}

bool MixedGraph::is_observed(const std::string& name) const {
  return nodes_[require(name)].observed;
}

void MixedGraph::add_edge(const std::string& tail, EdgeKind kind, const std::string& head) {
  require(tail);
  require(head);
  if (tail == head) throw Error("self loop on node: " + tail);
  auto pair = canonical_pair(tail, head);
  if (pairs_.count(pair)) throw Error("duplicate edge between " + tail + " and " + head);
  pairs_.insert(pair);
  if (kind == EdgeKind::Directed) {
    edges_.push_back(Edge{tail, head, kind});
  } else {
    edges_.push_back(Edge{pair.first, pair.second, kind});
  }
}

bool MixedGraph::adjacent(const std::string& a, const std::string& b) const {
  return pairs_.count(canonical_pair(a, b)) != 0;
}

std::optional<Edge> MixedGraph::edge_between(const std::string& a, const std::string& b) const {
  if (!adjacent(a, b)) return std::nullopt;
  for (const Edge& e : edges_) {
    if ((e.tail == a && e.head == b) || (e.tail == b && e.head == a)) return e;
  }
  return std::nullopt;
}

std::size_t MixedGraph::count_edges(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.kind == kind; }));
}

CausalDag::CausalDag(std::vector<Node> nodes,
                     const std::vector<std::pair<std::string, std::string>>& edges)
    : nodes_(std::move(nodes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (index_.count(nodes_[i].name)) throw Error("duplicate node name: " + nodes_[i].name);
    index_[nodes_[i].name] = static_cast<int>(i);
  }
  parents_.resize(nodes_.size());
  children_.resize(nodes_.size());
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [tail, head] : edges) {
    const int t = index_of(tail);
    const int h = index_of(head);
    if (t == h) throw Error("self loop on node: " + tail);
    auto pair = canonical_pair(tail, head);
    if (seen.count(pair)) throw Error("duplicate edge between " + tail + " and " + head);
    seen.insert(pair);
    parents_[h].push_back(t);
    children_[t].push_back(h);
  }
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  for (auto& v : children_) std::sort(v.begin(), v.end());
  topological_order();  // throws CycleError if cyclic
}

int CausalDag::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownNodeError("unknown node: " + name);
  return it->second;
}

std::vector<std::string> CausalDag::parents_of(const std::string& name) const {
  std::vector<std::string> out;
  for (int p : parents_[index_of(name)]) out.push_back(nodes_[p].name);
  return out;
}

std::vector<std::string> CausalDag::children_of(const std::string& name) const {
  std::vector<std::string> out;
  for (int c : children_[index_of(name)]) out.push_back(nodes_[c].name);
  return out;
}

bool CausalDag::has_edge(const std::string& tail, const std::string& head) const {
  const int t = index_of(tail);
  const int h = index_of(head);
  return std::binary_search(children_[t].begin(), children_[t].end(), h);
}

std::vector<std::pair<std::string, std::string>> CausalDag::edge_list() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t t = 0; t < nodes_.size(); ++t)
    for (int h : children_[t]) out.emplace_back(nodes_[t].name, nodes_[h].name);
  return out;
}

std::size_t CausalDag::edge_count() const {
  std::size_t n = 0;
  for (const auto& c : children_) n += c.size();
  return n;
}

std::vector<std::string> CausalDag::topological_order() const {
  std::vector<int> indegree(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    indegree[i] = static_cast<int>(parents_[i].size());
  // Kahn's algorithm; the ready set is kept sorted so the order is canonical.
  std::set<int> ready;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (indegree[i] == 0) ready.insert(static_cast<int>(i));
  std::vector<std::string> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    const int n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(nodes_[n].name);
    for (int c : children_[n])
      if (--indegree[c] == 0) ready.insert(c);
  }
  if (order.size() != nodes_.size()) throw CycleError("directed edges contain a cycle");
  return order;
}

std::string render_path(const CausalDag& g, const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    out += p.nodes[i];
    if (i + 1 < p.nodes.size())
      out += g.has_edge(p.nodes[i], p.nodes[i + 1]) ? " -> " : " <- ";
  }
  return out;
}

CausalDag expand_latents(const MixedGraph& g) {
  std::vector<Node> nodes = g.nodes();
  std::set<std::string> taken;
  for (const Node& n : nodes) taken.insert(n.name);

  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<Edge> bidirected;
  for (const Edge& e : g.edges()) {
    switch (e.kind) {
      case EdgeKind::Directed:
        edges.emplace_back(e.tail, e.head);
        break;
      case EdgeKind::Bidirected:
        bidirected.push_back(e);
        break;
      case EdgeKind::Undirected:
        throw UnresolvedEdgeError("undirected edge " + e.tail + " -- " + e.head +
                                  " must be resolved or dropped before latent expansion");
    }
  }
  std::sort(bidirected.begin(), bidirected.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.tail, a.head) < std::tie(b.tail, b.head); });

  int counter = 1;
  for (const Edge& e : bidirected) {
    std::string latent;
    do {
      latent = "U" + std::to_string(counter++);
    } while (taken.count(latent));
    taken.insert(latent);
    nodes.push_back(Node{latent, /*observed=*/false});
    edges.emplace_back(latent, e.tail);
    edges.emplace_back(latent, e.head);
  }
  return CausalDag(std::move(nodes), edges);  // CycleError surfaces here
}

CausalDag mutilate(const CausalDag& g, const std::string& treatment) {
  g.index_of(treatment);
  std::vector<std::pair<std::string, std::string>> kept;
  for (const auto& [tail, head] : g.edge_list())
    if (tail != treatment) kept.emplace_back(tail, head);
  return CausalDag(g.nodes(), kept);
}

std::set<std::string> descendants(const CausalDag& g, const std::string& node) {
  const int start = g.index_of(node);
  std::set<std::string> out;
  std::deque<int> queue(1, start);
  std::vector<bool> seen(g.size(), false);
  seen[start] = true;
  while (!queue.empty()) {
    const int n = queue.front();
    queue.pop_front();
    for (int c : g.children(n)) {
      if (!seen[c]) {
        seen[c] = true;
        out.insert(g.node(c).name);
        queue.push_back(c);
      }
    }
  }
  return out;
}

CausalDag observed_projection(const CausalDag& g) {
  std::vector<Node> nodes;
  for (const Node& n : g.nodes())
    if (n.observed) nodes.push_back(n);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [tail, head] : g.edge_list())
    if (g.is_observed(tail) && g.is_observed(head)) edges.emplace_back(tail, head);
  return CausalDag(std::move(nodes), edges);
}

}  // namespace causalbn
