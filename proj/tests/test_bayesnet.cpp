#include <doctest.h>

#include <cmath>

#include "causalbn/infer.hpp"
#include "causalbn/sampling.hpp"

#include "helpers.hpp"

using namespace causalbn;
using namespace testutil;

namespace {

DiscreteBayesNet two_node_chain() {
  CausalDag dag({{"X", true}, {"Y", true}}, {{"X", "Y"}});
  std::vector<VariableCard> cards{{"X", {"0", "1"}}, {"Y", {"0", "1"}}};
  std::vector<Cpt> cpts(2);
  cpts[0] = Cpt{"X", {}, {}, 2, {0.3, 0.7}};
  cpts[1] = Cpt{"Y", {"X"}, {2}, 2, {0.9, 0.1, 0.2, 0.8}};
  return DiscreteBayesNet(dag, cards, cpts);
}

double row_tv(const Cpt& a, const Cpt& b, std::size_t row) {
  double tv = 0.0;
  for (int v = 0; v < a.child_card; ++v) tv += std::abs(a.p(row, v) - b.p(row, v));
  return tv / 2.0;
}

}  // namespace

TEST_CASE("fit_mle matches the smoothed count ratio") {
  auto schema = make_schema({{"X", 2}, {"Y", 2}});
  // X=0 rows: Y counts (3,1). X=1 rows: Y counts (2,2).
  const Dataset d = from_rows(schema, {{{0, 0}, 3}, {{0, 1}, 1}, {{1, 0}, 2}, {{1, 1}, 2}});
  CausalDag dag({{"X", true}, {"Y", true}}, {{"X", "Y"}});
  const DiscreteBayesNet bn = fit_mle(dag, d, 1e-5);
  const Cpt& y = bn.cpt("Y");
  CHECK(y.p(0, 0) == doctest::Approx((3.0 + 1e-5) / (4.0 + 2e-5)).epsilon(1e-14));
  CHECK(y.p(0, 1) == doctest::Approx((1.0 + 1e-5) / (4.0 + 2e-5)).epsilon(1e-14));
  CHECK(y.p(0, 0) == doctest::Approx(0.749999375).epsilon(1e-9));
  CHECK(y.p(0, 1) == doctest::Approx(0.250000625).epsilon(1e-9));
}

TEST_CASE("unobserved parent configurations smooth to uniform") {
  auto schema = make_schema({{"X", 3}, {"Y", 2}});
  const Dataset d = from_rows(schema, {{{0, 0}, 5}, {{1, 1}, 5}});  // X=2 never observed
  CausalDag dag({{"X", true}, {"Y", true}}, {{"X", "Y"}});
  const DiscreteBayesNet bn = fit_mle(dag, d, 1e-5);
  const Cpt& y = bn.cpt("Y");
  CHECK(y.p(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(y.p(2, 1) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(fit_mle(dag, d, 0.0), ZeroFrequencyError);
  CHECK_THROWS_AS(fit_mle(dag, d, -0.1), NegativeAlphaError);
}

TEST_CASE("every fitted row sums to one") {
  Rng rng(7);
  const DiscreteBayesNet gen = random_net(rng);
  const Dataset d = forward_sample(gen, 500, 3);
  const DiscreteBayesNet bn = fit_mle(gen.dag(), d, 1e-5);
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const Cpt& c = bn.cpt(static_cast<int>(i));
    for (std::size_t r = 0; r < c.rows(); ++r) {
      double total = 0.0;
      for (int v = 0; v < c.child_card; ++v) {
        total += c.p(r, v);
        CHECK(c.p(r, v) > 0.0);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("fit errors on missing and latent columns") {
  auto schema = make_schema({{"X", 2}});
  const Dataset d = from_rows(schema, {{{0}, 2}});
  CausalDag with_extra({{"X", true}, {"Z", true}}, {});
  CHECK_THROWS_AS(fit_mle(with_extra, d, 1e-5), MissingColumnError);
  CausalDag with_latent({{"X", true}, {"U", false}}, {});
  CHECK_THROWS_AS(fit_mle(with_latent, d, 1e-5), LatentWithoutDataError);
}

TEST_CASE("joint probability is the CPT product") {
  const DiscreteBayesNet bn = two_node_chain();
  CHECK(joint_probability(bn, {{"X", "0"}, {"Y", "0"}}) == doctest::Approx(0.27).epsilon(1e-14));
  CHECK(joint_probability(bn, {{"X", "1"}, {"Y", "0"}}) == doctest::Approx(0.14).epsilon(1e-14));
  CHECK_THROWS_AS(joint_probability(bn, {{"X", "0"}}), IncompleteAssignmentError);

  // single root marginal
  CausalDag root({{"X", true}}, {});
  DiscreteBayesNet single(root, {{"X", {"a", "b"}}}, {Cpt{"X", {}, {}, 2, {0.3, 0.7}}});
  CHECK(joint_probability(single, {{"X", "a"}}) == doctest::Approx(0.3));

  // all assignments sum to one, all positive
  Rng rng(11);
  const DiscreteBayesNet net = random_net(rng);
  double total = 0.0;
  for_each_assignment(net_cards(net), [&](const std::vector<int>& state) {
    std::map<std::string, std::string> assignment;
    for (std::size_t i = 0; i < net.size(); ++i) {
      const VariableCard& c = net.card(static_cast<int>(i));
      assignment[c.name] = c.states[state[i]];
    }
    const double p = joint_probability(net, assignment);
    CHECK(p > 0.0);
    total += p;
  });
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("elimination on a chain returns the CPT row") {
  const DiscreteBayesNet bn = two_node_chain();
  const Factor f = eliminate(bn, {"Y"}, {{"X", "0"}});
  CHECK(f.values()[0] == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(f.values()[1] == doctest::Approx(0.1).epsilon(1e-14));
  const Factor m = marginal(bn, "X");
  CHECK(m.values()[0] == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("elimination matches exhaustive enumeration on random nets") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const DiscreteBayesNet bn = random_net(rng);
    const int n = static_cast<int>(bn.size());
    // random query of 1-2 variables plus random evidence
    std::vector<std::string> query{bn.card(static_cast<int>(rng.uniform_index(n))).name};
    if (rng.uniform() < 0.5) {
      const std::string extra = bn.card(static_cast<int>(rng.uniform_index(n))).name;
      if (extra != query[0]) query.push_back(extra);
    }
    std::map<std::string, std::string> evidence;
    for (int i = 0; i < n; ++i) {
      const VariableCard& c = bn.card(i);
      if (std::find(query.begin(), query.end(), c.name) != query.end()) continue;
      if (rng.uniform() < 0.3)
        evidence[c.name] = c.states[rng.uniform_index(c.states.size())];
    }
    const Factor got = eliminate(bn, {query.begin(), query.end()}, evidence);
    const std::vector<double> want = enumerate_conditional(bn, query, evidence);
    REQUIRE(got.values().size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      CHECK(got.values()[i] == doctest::Approx(want[i]).epsilon(1e-10));
  }
}

TEST_CASE("elimination is order-invariant") {
  Rng rng(31);
  const DiscreteBayesNet bn = random_net(rng);
  std::vector<std::string> hidden;
  for (std::size_t i = 1; i < bn.size(); ++i) hidden.push_back(bn.card(static_cast<int>(i)).name);
  const std::set<std::string> query{bn.card(0).name};
  const Factor a = eliminate_with_order(bn, query, {}, hidden);
  std::reverse(hidden.begin(), hidden.end());
  const Factor b = eliminate_with_order(bn, query, {}, hidden);
  const Factor c = eliminate(bn, query, {});
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    CHECK(a.values()[i] == doctest::Approx(b.values()[i]).epsilon(1e-10));
    CHECK(a.values()[i] == doctest::Approx(c.values()[i]).epsilon(1e-10));
  }
}

TEST_CASE("zero-probability evidence raises") {
  CausalDag dag({{"X", true}, {"Y", true}}, {{"X", "Y"}});
  std::vector<VariableCard> cards{{"X", {"0", "1"}}, {"Y", {"0", "1"}}};
  std::vector<Cpt> cpts(2);
  cpts[0] = Cpt{"X", {}, {}, 2, {1.0, 0.0}};  // X = 1 impossible
  cpts[1] = Cpt{"Y", {"X"}, {2}, 2, {0.5, 0.5, 0.5, 0.5}};
  const DiscreteBayesNet bn(dag, cards, cpts);
  CHECK_THROWS_AS(eliminate(bn, {"Y"}, {{"X", "1"}}), ZeroEvidenceProbabilityError);
  CHECK_THROWS_AS(eliminate(bn, {"X"}, {{"X", "0"}}), Error);    // overlap
  CHECK_THROWS_AS(marginal(bn, "nope"), UnknownNodeError);
}

TEST_CASE("forward sampling converges to the net marginals and hides columns") {
  const DiscreteBayesNet bn = two_node_chain();
  const Dataset d = forward_sample(bn, 100000, 99);
  double x1 = 0.0;
  for (std::size_t r = 0; r < d.rows(); ++r) x1 += d.cell(r, 0);
  CHECK(x1 / d.rows() == doctest::Approx(0.7).epsilon(0.02));

  const Dataset hidden = forward_sample(bn, 100, 99, {"X"});
  CHECK(hidden.columns() == 1);
  CHECK(hidden.schema().at(0).name == "Y");

  // deterministic net -> constant dataset
  CausalDag root({{"X", true}}, {});
  DiscreteBayesNet point(root, {{"X", {"a", "b"}}}, {Cpt{"X", {}, {}, 2, {0.0, 1.0}}});
  const Dataset constant = forward_sample(point, 50, 1);
  for (std::size_t r = 0; r < constant.rows(); ++r) CHECK(constant.cell(r, 0) == 1);

  // serial and parallel draws are bit-identical
  const Dataset serial = forward_sample(bn, 5000, 4, {}, ExecMode::Serial);
  const Dataset parallel = forward_sample(bn, 5000, 4, {}, ExecMode::Parallel);
  for (std::size_t r = 0; r < serial.rows(); ++r) {
    CHECK(serial.cell(r, 0) == parallel.cell(r, 0));
    CHECK(serial.cell(r, 1) == parallel.cell(r, 1));
  }
}

TEST_CASE("fit, sample, refit recovers the CPTs") {
  Rng rng(77);
  RandomNetOptions opts;
  opts.min_nodes = 4;
  opts.max_nodes = 5;
  opts.max_card = 2;
  opts.max_parents = 2;
  opts.cpt_floor = 1.0;  // rows bounded away from determinism
  const DiscreteBayesNet gen = random_net(rng, opts);

  const Dataset d1 = forward_sample(gen, 100000, 1234);
  const DiscreteBayesNet fit1 = fit_mle(gen.dag(), d1, 1e-5);
  const Dataset d2 = forward_sample(fit1, 100000, 5678);
  const DiscreteBayesNet fit2 = fit_mle(gen.dag(), d2, 1e-5);

  for (std::size_t i = 0; i < gen.size(); ++i) {
    const Cpt& a = gen.cpt(static_cast<int>(i));
    const Cpt& b = fit1.cpt(static_cast<int>(i));
    const Cpt& c = fit2.cpt(static_cast<int>(i));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      CHECK(row_tv(a, b, r) <= 0.02);
      CHECK(row_tv(b, c, r) <= 0.02);
    }
  }
}
