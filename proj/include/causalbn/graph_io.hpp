#pragma once

#include <iosfwd>
#include <string>

#include "causalbn/graph.hpp"

namespace causalbn {

// Plain-text graph fixture format, one statement per line:
//   node <name> [latent]
//   <tail> -> <head>      directed
//   <a> <-> <b>           bi-directed
//   <a> -- <b>            undirected
// '#' starts a comment. Nodes must be declared before use.
MixedGraph parse_graph(std::istream& in);
MixedGraph load_graph(const std::string& path);
std::string format_graph(const MixedGraph& g);
void save_graph(const MixedGraph& g, const std::string& path);

// Convenience for fixtures holding a DAG (directed edges only).
CausalDag load_dag(const std::string& path);

}  // namespace causalbn
