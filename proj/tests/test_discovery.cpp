#include <doctest.h>

#include <algorithm>
#include <set>

#include "causalbn/discovery.hpp"
#include "causalbn/ev_study.hpp"
#include "causalbn/sampling.hpp"

#include "helpers.hpp"

using namespace causalbn;
using namespace testutil;

namespace {

// Three-node generators with solid but noisy links.
DiscreteBayesNet chain_net() {
  CausalDag dag({{"X", true}, {"Z", true}, {"Y", true}}, {{"X", "Z"}, {"Z", "Y"}});
  std::vector<VariableCard> cards{{"X", {"0", "1"}}, {"Z", {"0", "1"}}, {"Y", {"0", "1"}}};
  std::vector<Cpt> cpts(3);
  cpts[0] = Cpt{"X", {}, {}, 2, {0.5, 0.5}};
  cpts[1] = Cpt{"Z", {"X"}, {2}, 2, {0.85, 0.15, 0.15, 0.85}};
  cpts[2] = Cpt{"Y", {"Z"}, {2}, 2, {0.85, 0.15, 0.15, 0.85}};
  return DiscreteBayesNet(dag, cards, cpts);
}

DiscreteBayesNet fork_net() {
  CausalDag dag({{"Z", true}, {"X", true}, {"Y", true}}, {{"Z", "X"}, {"Z", "Y"}});
  std::vector<VariableCard> cards{{"Z", {"0", "1"}}, {"X", {"0", "1"}}, {"Y", {"0", "1"}}};
  std::vector<Cpt> cpts(3);
  cpts[0] = Cpt{"Z", {}, {}, 2, {0.5, 0.5}};
  cpts[1] = Cpt{"X", {"Z"}, {2}, 2, {0.85, 0.15, 0.15, 0.85}};
  cpts[2] = Cpt{"Y", {"Z"}, {2}, 2, {0.85, 0.15, 0.15, 0.85}};
  return DiscreteBayesNet(dag, cards, cpts);
}

DiscreteBayesNet collider_net() {
  CausalDag dag({{"X", true}, {"Y", true}, {"Z", true}}, {{"X", "Z"}, {"Y", "Z"}});
  std::vector<VariableCard> cards{{"X", {"0", "1"}}, {"Y", {"0", "1"}}, {"Z", {"0", "1"}}};
  std::vector<Cpt> cpts(3);
  cpts[0] = Cpt{"X", {}, {}, 2, {0.65, 0.35}};
  cpts[1] = Cpt{"Y", {}, {}, 2, {0.65, 0.35}};
  // noisy XOR
  cpts[2] = Cpt{"Z", {"X", "Y"}, {2, 2}, 2,
                {0.9, 0.1, 0.1, 0.9, 0.1, 0.9, 0.9, 0.1}};
  return DiscreteBayesNet(dag, cards, cpts);
}

std::set<std::pair<std::string, std::string>> edge_set(const SkeletonState& s) {
  const auto e = s.edges();
  return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("chain pruning removes the mediated pair") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Dataset d = forward_sample(chain_net(), 10000, seed);
    const SkeletonState s = prune_skeleton(d, {});
    CHECK(edge_set(s) ==
          std::set<std::pair<std::string, std::string>>{{"X", "Z"}, {"Y", "Z"}});
    const PairDecision* xy = s.decision("X", "Y");
    REQUIRE(xy != nullptr);
    CHECK_FALSE(xy->retained);
    CHECK(xy->contributors == std::vector<std::string>{"Z"});
  }
}

TEST_CASE("independent variables stay unlinked") {
  CausalDag dag({{"X", true}, {"Y", true}}, {});
  std::vector<Cpt> cpts{Cpt{"X", {}, {}, 2, {0.5, 0.5}}, Cpt{"Y", {}, {}, 2, {0.3, 0.7}}};
  const DiscreteBayesNet net(dag, {{"X", {"0", "1"}}, {"Y", {"0", "1"}}}, cpts);
  for (std::uint64_t seed : {10u, 11u, 12u}) {
    const Dataset d = forward_sample(net, 10000, seed);
    CHECK(prune_skeleton(d, {}).edges().empty());
  }
}

TEST_CASE("a perfect copy is retained even at n = 50") {
  auto schema = make_schema({{"X", 2}, {"Y", 2}});
  const Dataset d = from_rows(schema, {{{0, 0}, 25}, {{1, 1}, 25}});
  const SkeletonState s = prune_skeleton(d, {});
  REQUIRE(s.pairs.size() == 1);
  CHECK(s.pairs[0].retained);
  CHECK(s.pairs[0].residual_bits > 10 * s.pairs[0].threshold_bits);
}

TEST_CASE("collider data orients arrows into the mid node") {
  const Dataset d = forward_sample(collider_net(), 10000, 21);
  const DiscoveryResult r = discover(d, {});
  const auto xz = r.graph.edge_between("X", "Z");
  const auto yz = r.graph.edge_between("Y", "Z");
  REQUIRE(xz.has_value());
  REQUIRE(yz.has_value());
  CHECK(xz->kind == EdgeKind::Directed);
  CHECK(xz->tail == "X");
  CHECK(xz->head == "Z");
  CHECK(yz->kind == EdgeKind::Directed);
  CHECK(yz->tail == "Y");
  CHECK_FALSE(r.graph.adjacent("X", "Y"));
}

TEST_CASE("chain and fork stay undirected (Markov equivalence)") {
  for (const DiscreteBayesNet& net : {chain_net(), fork_net()}) {
    const Dataset d = forward_sample(net, 10000, 33);
    const DiscoveryResult r = discover(d, {});
    CHECK(r.graph.count_edges(EdgeKind::Undirected) == 2);
    CHECK(r.graph.count_edges(EdgeKind::Directed) == 0);
  }
}

TEST_CASE("Meek rule 1 propagates away from an identified collider") {
  // A -> B <- D (collider), B -> C (chain): the v-structure orients A,D into
  // B, and rule 1 then forces B -> C to avoid a new collider.
  CausalDag dag({{"A", true}, {"D", true}, {"B", true}, {"C", true}},
                {{"A", "B"}, {"D", "B"}, {"B", "C"}});
  std::vector<VariableCard> cards{
      {"A", {"0", "1"}}, {"D", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}};
  std::vector<Cpt> cpts(4);
  cpts[0] = Cpt{"A", {}, {}, 2, {0.65, 0.35}};
  cpts[1] = Cpt{"D", {}, {}, 2, {0.65, 0.35}};
  cpts[2] = Cpt{"B", {"A", "D"}, {2, 2}, 2, {0.95, 0.05, 0.05, 0.95, 0.05, 0.95, 0.95, 0.05}};
  cpts[3] = Cpt{"C", {"B"}, {2}, 2, {0.8, 0.2, 0.2, 0.8}};
  const DiscreteBayesNet net(dag, cards, cpts);

  const Dataset d = forward_sample(net, 20000, 5);
  const DiscoveryResult r = discover(d, {});
  const auto bc = r.graph.edge_between("B", "C");
  REQUIRE(bc.has_value());
  CHECK(bc->kind == EdgeKind::Directed);
  CHECK(bc->tail == "B");
  CHECK(bc->head == "C");
  bool rule1_fired = false;
  for (const OrientationRecord& rec : r.orientation_log)
    if (rec.rule == "meek1") rule1_fired = true;
  CHECK(rule1_fired);
}

TEST_CASE("blacklisted directions never appear") {
  Blacklist bl;
  bl.forbidden.insert({"X", "Z"});
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Dataset d = forward_sample(collider_net(), 8000, 100 + seed);
    const DiscoveryResult r = discover(d, bl);
    for (const Edge& e : r.graph.edges()) {
      if (e.kind != EdgeKind::Directed) continue;
      CHECK_FALSE((e.tail == "X" && e.head == "Z"));
    }
    // the other parent still orients
    const auto yz = r.graph.edge_between("Y", "Z");
    REQUIRE(yz.has_value());
    CHECK(yz->kind == EdgeKind::Directed);
  }

  Blacklist bad;
  bad.forbidden.insert({"X", "W"});
  const Dataset d = forward_sample(collider_net(), 100, 1);
  CHECK_THROWS_AS(discover(d, bad), SchemaMismatchError);
}

TEST_CASE("raising the complexity threshold never adds edges") {
  const Dataset d = forward_sample(ev_study_network(), 4000, 55, {"U1", "U2"});
  DiscoveryOptions base;
  DiscoveryOptions strict;
  strict.complexity_scale = 4.0;
  const auto loose_edges = edge_set(prune_skeleton(d, {}, base));
  const auto strict_edges = edge_set(prune_skeleton(d, {}, strict));
  for (const auto& e : strict_edges) CHECK(loose_edges.count(e));
  CHECK(strict_edges.size() <= loose_edges.size());
}

TEST_CASE("discovered graphs contain no directed cycle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset d = forward_sample(ev_study_network(), 3000, 900 + seed, {"U1", "U2"});
    const DiscoveryResult r = discover(d, ev_study_blacklist().resolved(d.schema()));
    std::vector<std::pair<std::string, std::string>> directed;
    for (const Edge& e : r.graph.edges())
      if (e.kind == EdgeKind::Directed) directed.emplace_back(e.tail, e.head);
    CHECK_NOTHROW(CausalDag(r.graph.nodes(), directed));
  }
}

TEST_CASE("single-variable data yields an empty edge set") {
  auto schema = make_schema({{"X", 3}});
  const Dataset d = from_rows(schema, {{{0}, 5}, {{1}, 5}, {{2}, 5}});
  const DiscoveryResult r = discover(d, {});
  CHECK(r.graph.edges().empty());
}

TEST_CASE("XOR triple recovers the v-structure end to end") {
  const Dataset d = forward_sample(collider_net(), 10000, 77);
  const DiscoveryResult r = discover(d, {});
  int into_z = 0;
  for (const Edge& e : r.graph.edges())
    if (e.kind == EdgeKind::Directed && e.head == "Z") ++into_z;
  CHECK(into_z == 2);
}

TEST_CASE("study-shaped data recovers most of the skeleton") {
  const Dataset d = forward_sample(ev_study_network(), 50000, 4242, {"U1", "U2"});
  const SkeletonState s = prune_skeleton(d, {});
  const auto got = edge_set(s);
  std::set<std::pair<std::string, std::string>> want;
  for (const auto& [tail, head] : observed_projection(ev_study_dag()).edge_list())
    want.insert(tail < head ? std::make_pair(tail, head) : std::make_pair(head, tail));
  std::size_t hit = 0;
  for (const auto& e : want) hit += got.count(e);
  const double recall = static_cast<double>(hit) / static_cast<double>(want.size());
  MESSAGE("skeleton recall: ", recall, " (", hit, "/", want.size(), ")");
  CHECK(recall >= 0.9);
}

TEST_CASE("pair scoring is identical under serial and parallel execution") {
  const Dataset d = forward_sample(ev_study_network(), 5000, 8, {"U1", "U2"});
  DiscoveryOptions serial;
  serial.exec = ExecMode::Serial;
  DiscoveryOptions parallel;
  parallel.exec = ExecMode::Parallel;
  const SkeletonState a = prune_skeleton(d, {}, serial);
  const SkeletonState b = prune_skeleton(d, {}, parallel);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].x == b.pairs[i].x);
    CHECK(a.pairs[i].retained == b.pairs[i].retained);
    CHECK(a.pairs[i].residual_bits == b.pairs[i].residual_bits);   // bitwise
    CHECK(a.pairs[i].threshold_bits == b.pairs[i].threshold_bits);
    CHECK(a.pairs[i].contributors == b.pairs[i].contributors);
  }
}
