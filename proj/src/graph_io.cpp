#include "causalbn/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace causalbn {

MixedGraph parse_graph(std::istream& in) {
  MixedGraph g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = " (line " + std::to_string(lineno) + ")";
    if (tok[0] == "node") {
      if (tok.size() == 2) {
        g.add_node(tok[1], true);
      } else if (tok.size() == 3 && tok[2] == "latent") {
        g.add_node(tok[1], false);
      } else {
        throw Error("malformed node statement" + where);
      }
    } else if (tok.size() == 3) {
      EdgeKind kind;
      if (tok[1] == "->")
        kind = EdgeKind::Directed;
      else if (tok[1] == "<->")
        kind = EdgeKind::Bidirected;
      else if (tok[1] == "--")
        kind = EdgeKind::Undirected;
      else
        throw Error("unknown edge kind '" + tok[1] + "'" + where);
      g.add_edge(tok[0], kind, tok[2]);
    } else {
      throw Error("malformed statement" + where);
    }
  }
  return g;
}

MixedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  return parse_graph(in);
}

std::string format_graph(const MixedGraph& g) {
  std::ostringstream out;
  for (const Node& n : g.nodes()) {
    out << "node " << n.name;
    if (!n.observed) out << " latent";
    out << '\n';
  }
  for (const Edge& e : g.edges()) {
    const char* arrow = e.kind == EdgeKind::Directed     ? "->"
                        : e.kind == EdgeKind::Bidirected ? "<->"
                                                         : "--";
    out << e.tail << ' ' << arrow << ' ' << e.head << '\n';
  }
  return out.str();
}

void save_graph(const MixedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file: " + path);
  out << format_graph(g);
}

CausalDag load_dag(const std::string& path) {
  const MixedGraph g = load_graph(path);
  if (g.count_edges(EdgeKind::Bidirected) || g.count_edges(EdgeKind::Undirected))
    return expand_latents(g);  // UnresolvedEdgeError on undirected edges
  std::vector<std::pair<std::string, std::string>> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(e.tail, e.head);
  return CausalDag(g.nodes(), edges);
}

}  // namespace causalbn
