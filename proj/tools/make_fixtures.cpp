// Regenerates the files under fixtures/ from the in-library definitions.
#include <filesystem>
#include <iostream>

#include "causalbn/ev_study.hpp"
#include "causalbn/graph_io.hpp"
#include "causalbn/serialize.hpp"

using namespace causalbn;

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);

  // final DAG (latents explicit)
  {
    const CausalDag dag = ev_study_dag();
    MixedGraph g;
    for (const Node& n : dag.nodes()) g.add_node(n.name, n.observed);
    for (const auto& [tail, head] : dag.edge_list()) g.add_edge(tail, EdgeKind::Directed, head);
    save_graph(g, dir + "/fig3.graph");
  }
  save_graph(ev_study_mag(), dir + "/fig2b.graph");

  const VariableSchema schema = ev_study_schema();
  write_text(dir + "/ev_schema.json", schema_to_json(schema).dump(2) + "\n");
  save_net(ev_study_network(), dir + "/ev_generator.json");

  json pipeline{
      {"data", "out/synthetic.csv"},
      {"schema", "fixtures/ev_schema.json"},
      {"graph", "fixtures/fig3.graph"},
      {"output_dir", "out"},
      {"alpha", 1e-5},
      {"adjustment_max_size", 3},
      {"blacklist", json::array({json::array({"V1", "V12"})})},
      {"discovery", {{"max_contributors", 3}, {"complexity_scale", 1.0}}},
      {"refutation", {{"iterations", 1000}, {"master_seed", 20220901}, {"subsample_fraction", 0.8}}},
      {"estimands",
       json::array(
           {json{{"name", "parking"},
                 {"treatment", "V7"},
                 {"outcome", "Y"},
                 {"adjustment", "auto"},
                 {"control", "On-street"},
                 {"treated", "Off-street"},
                 {"outcome_state", "Already own"}},
            json{{"name", "income_bands"},
                 {"treatment", "V1"},
                 {"outcome", "Y"},
                 {"adjustment", json::array({"V5"})},
                 {"control", "low"},
                 {"treated", "high"},
                 {"aggregate_income_bands", true}}})},
      {"simulate",
       {{"generator", "fixtures/ev_generator.json"},
        {"n", 20000},
        {"seed", 7},
        {"hide", json::array({"U1", "U2"})},
        {"output", "synthetic.csv"}}}};
  write_text(dir + "/pipeline.json", pipeline.dump(2) + "\n");

  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
