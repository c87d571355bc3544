#include <doctest.h>

#include <cmath>

#include "causalbn/effects.hpp"
#include "causalbn/ev_study.hpp"
#include "causalbn/infer.hpp"

#include "helpers.hpp"

using namespace causalbn;
using namespace testutil;

namespace {

// Z -> X, Z -> Y, X -> Y with strong confounding and a real effect.
DiscreteBayesNet confounded_net() {
  CausalDag dag({{"Z", true}, {"X", true}, {"Y", true}}, {{"Z", "X"}, {"Z", "Y"}, {"X", "Y"}});
  std::vector<VariableCard> cards{{"Z", {"0", "1"}}, {"X", {"0", "1"}}, {"Y", {"0", "1"}}};
  std::vector<Cpt> cpts(3);
  cpts[0] = Cpt{"Z", {}, {}, 2, {0.6, 0.4}};
  cpts[1] = Cpt{"X", {"Z"}, {2}, 2, {0.8, 0.2, 0.25, 0.75}};
  // parents of Y in net order: (Z, X); row = z*2 + x
  cpts[2] = Cpt{"Y", {"Z", "X"}, {2, 2}, 2, {0.9, 0.1, 0.75, 0.25, 0.55, 0.45, 0.35, 0.65}};
  return DiscreteBayesNet(dag, cards, cpts);
}

}  // namespace

TEST_CASE("estimand construction validates the certificate") {
  const CausalDag dag = ev_study_dag();
  const AdjustmentEstimand est(dag, "V7", "Y", {"V8", "V9"});
  CHECK(est.certificate().size() == 24);

  CHECK_THROWS_AS(AdjustmentEstimand(dag, "V7", "Y", {"V1"}), InvalidAdjustmentError);
  try {
    AdjustmentEstimand(dag, "V7", "Y", {"V1"});
  } catch (const InvalidAdjustmentError& e) {
    REQUIRE(e.open_path.has_value());
    CHECK(e.open_path->nodes == std::vector<std::string>{"V7", "V8", "U2", "Y"});
    CHECK(std::string(e.what()).find("V7 <- V8 <- U2 -> Y") != std::string::npos);
  }
  // descendants of the treatment are rejected up front
  CHECK_THROWS_AS(AdjustmentEstimand(dag, "V7", "Y", {"V2"}), InvalidAdjustmentError);
  // latents are not usable
  CHECK_THROWS_AS(AdjustmentEstimand(dag, "V7", "Y", {"U2"}), InvalidAdjustmentError);
}

TEST_CASE("no confounding: adjustment equals the observational conditional") {
  CausalDag dag({{"X", true}, {"Y", true}}, {{"X", "Y"}});
  std::vector<Cpt> cpts{Cpt{"X", {}, {}, 2, {0.4, 0.6}},
                        Cpt{"Y", {"X"}, {2}, 2, {0.7, 0.3, 0.2, 0.8}}};
  const DiscreteBayesNet bn(dag, {{"X", {"0", "1"}}, {"Y", {"0", "1"}}}, cpts);
  const AdjustmentEstimand est(bn.dag(), "X", "Y", {});
  const auto adj = backdoor_adjust(bn, est, "0");
  const auto obs = eliminate(bn, {"Y"}, {{"X", "0"}}).values();
  for (int i = 0; i < 2; ++i) CHECK(adj[i] == doctest::Approx(obs[i]).epsilon(1e-14));
  CHECK(adj[0] == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("adjustment matches graph surgery on the confounded net") {
  const DiscreteBayesNet bn = confounded_net();
  const AdjustmentEstimand est(bn.dag(), "X", "Y", {"Z"});
  for (const std::string& x : {"0", "1"}) {
    const auto adj = backdoor_adjust(bn, est, x);
    const auto want = surgery_intervention(bn, "X", x, "Y");
    for (int i = 0; i < 2; ++i) CHECK(adj[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
  // and differs from the observational conditional (confounding is visible)
  const auto adj = backdoor_adjust(bn, est, "1");
  const auto obs = eliminate(bn, {"Y"}, {{"X", "1"}}).values();
  CHECK(std::abs(adj[1] - obs[1]) > 0.01);
}

TEST_CASE("property: adjustment equals surgery on random certified nets") {
  Rng rng(606);
  int done = 0;
  while (done < 30) {
    const DiscreteBayesNet bn = random_net(rng);
    const int n = static_cast<int>(bn.size());
    const int xi = static_cast<int>(rng.uniform_index(n));
    int yi = static_cast<int>(rng.uniform_index(n));
    if (xi == yi) continue;
    const std::string x = bn.card(xi).name, y = bn.card(yi).name;
    const auto sets = find_adjustment_sets(bn.dag(), x, y, 3);
    if (sets.empty()) continue;
    const AdjustmentEstimand est(bn.dag(), x, y, sets.front());
    const std::string x_value = bn.card(xi).states[rng.uniform_index(bn.card(xi).states.size())];
    const auto adj = backdoor_adjust(bn, est, x_value);
    const auto want = surgery_intervention(bn, x, x_value, y);
    REQUIRE(adj.size() == want.size());
    for (std::size_t i = 0; i < adj.size(); ++i)
      CHECK(adj[i] == doctest::Approx(want[i]).epsilon(1e-10));
    ++done;
  }
}

TEST_CASE("study net: adjusted parking effect is cleaner than the observational one") {
  const DiscreteBayesNet& bn = ev_study_network();
  const AdjustmentEstimand est(bn.dag(), "V7", "Y", {"V8", "V9"});
  const auto adj = backdoor_adjust(bn, est, "Off-street");
  const auto want = surgery_intervention(bn, "V7", "Off-street", "Y");
  for (std::size_t i = 0; i < adj.size(); ++i)
    CHECK(adj[i] == doctest::Approx(want[i]).epsilon(1e-10));

  const EffectReport te = treatment_effect(bn, est, "On-street", "Off-street");
  const EffectReport obs = observational_contrast(bn, "V7", "Y", "On-street", "Off-street");
  // the bundled generator plants upward confounding through wealth and
  // income, so the raw contrast overstates the ownership lift
  CHECK(obs.delta_pp[0] > te.delta_pp[0]);
  CHECK(std::abs(obs.delta_pp[0] - te.delta_pp[0]) > 0.5);
}

TEST_CASE("effect reports are proper distributions with antisymmetric contrasts") {
  const DiscreteBayesNet bn = confounded_net();
  const AdjustmentEstimand est(bn.dag(), "X", "Y", {"Z"});
  const EffectReport ab = treatment_effect(bn, est, "0", "1");
  const EffectReport ba = treatment_effect(bn, est, "1", "0");
  double total = 0.0, dsum = 0.0;
  for (std::size_t i = 0; i < ab.treated_dist.size(); ++i) {
    total += ab.treated_dist[i];
    dsum += ab.delta_pp[i];
    CHECK(ab.delta_pp[i] == doctest::Approx(-ba.delta_pp[i]).epsilon(1e-12));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dsum == doctest::Approx(0.0).epsilon(1e-9));

  const EffectReport same = treatment_effect(bn, est, "1", "1");
  for (double d : same.delta_pp) CHECK(d == 0.0);
}

TEST_CASE("confounded but causally disconnected: zero interventional contrast") {
  // Z -> X, Z -> Y; the hypothesis DAG still carries X -> Y
  CausalDag dag({{"Z", true}, {"X", true}, {"Y", true}}, {{"Z", "X"}, {"Z", "Y"}, {"X", "Y"}});
  std::vector<VariableCard> cards{{"Z", {"0", "1"}}, {"X", {"0", "1"}}, {"Y", {"0", "1"}}};
  std::vector<Cpt> cpts(3);
  cpts[0] = Cpt{"Z", {}, {}, 2, {0.5, 0.5}};
  cpts[1] = Cpt{"X", {"Z"}, {2}, 2, {0.85, 0.15, 0.2, 0.8}};
  // Y depends on Z only (row = z*2 + x, identical within each z)
  cpts[2] = Cpt{"Y", {"Z", "X"}, {2, 2}, 2, {0.9, 0.1, 0.9, 0.1, 0.3, 0.7, 0.3, 0.7}};
  const DiscreteBayesNet bn(dag, cards, cpts);

  const AdjustmentEstimand est(bn.dag(), "X", "Y", {"Z"});
  const EffectReport te = treatment_effect(bn, est, "0", "1");
  const EffectReport obs = observational_contrast(bn, "X", "Y", "0", "1");
  for (double d : te.delta_pp) CHECK(std::abs(d) < 1e-10);
  CHECK(std::abs(obs.delta_pp[0]) > 1.0);
}

TEST_CASE("positivity violations name the stratum") {
  CausalDag dag({{"Z", true}, {"X", true}, {"Y", true}}, {{"Z", "X"}, {"Z", "Y"}, {"X", "Y"}});
  std::vector<VariableCard> cards{{"Z", {"z0", "z1"}}, {"X", {"x0", "x1"}}, {"Y", {"y0", "y1"}}};
  std::vector<Cpt> cpts(3);
  cpts[0] = Cpt{"Z", {}, {}, 2, {0.5, 0.5}};
  cpts[1] = Cpt{"X", {"Z"}, {2}, 2, {1.0, 0.0, 0.5, 0.5}};  // x1 impossible under z0
  cpts[2] = Cpt{"Y", {"Z", "X"}, {2, 2}, 2, {0.9, 0.1, 0.3, 0.7, 0.8, 0.2, 0.4, 0.6}};
  const DiscreteBayesNet bn(dag, cards, cpts);
  const AdjustmentEstimand est(bn.dag(), "X", "Y", {"Z"});
  CHECK_THROWS_WITH_AS(backdoor_adjust(bn, est, "x1"), doctest::Contains("Z=z0"),
                       UnsupportedStratumError);
  CHECK_NOTHROW(backdoor_adjust(bn, est, "x0"));
}

TEST_CASE("band aggregation is a marginal-weighted average") {
  const std::vector<std::vector<double>> dists{{0.2, 0.8}, {0.6, 0.4}, {0.5, 0.5}};
  const std::vector<double> marginals{0.25, 0.25, 0.5};
  BandPartition part;
  part.groups = {{"low", {0, 1}}, {"high", {2}}};
  const auto out = aggregate_bands(dists, marginals, part);
  REQUIRE(out.size() == 2);
  CHECK(out[0][0] == doctest::Approx(0.4).epsilon(1e-12));  // (0.2*0.25 + 0.6*0.25) / 0.5
  CHECK(out[0][1] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(out[1][0] == doctest::Approx(0.5).epsilon(1e-12));  // single band unchanged

  // idempotence on equal distributions
  const auto same = aggregate_bands({{0.3, 0.7}, {0.3, 0.7}}, {0.9, 0.1},
                                    BandPartition{{{"g", {0, 1}}}});
  CHECK(same[0][0] == doctest::Approx(0.3).epsilon(1e-12));

  // invariance under rescaled marginals
  const auto scaled = aggregate_bands(dists, {2.5, 2.5, 5.0}, part);
  for (int g = 0; g < 2; ++g)
    for (int v = 0; v < 2; ++v) CHECK(scaled[g][v] == doctest::Approx(out[g][v]).epsilon(1e-12));

  CHECK_THROWS_AS(aggregate_bands(dists, marginals, BandPartition{{{"empty", {}}}}),
                  EmptyGroupError);
  CHECK_THROWS_AS(aggregate_bands(dists, {0.0, 0.0, 1.0},
                                  BandPartition{{{"low", {0, 1}}, {"high", {2}}}}),
                  ZeroMassGroupError);
}

TEST_CASE("risk ratios and E-values") {
  const RiskRatioReport parking = risk_ratio(0.0563, 0.0334);
  CHECK(parking.rr == doctest::Approx(1.685).epsilon(0.003));
  CHECK(parking.e_value == doctest::Approx(2.76).epsilon(0.004));

  const RiskRatioReport income = risk_ratio(0.0747, 0.0200);
  CHECK(income.rr == doctest::Approx(3.735).epsilon(0.003));

  const RiskRatioReport null_effect = risk_ratio(0.25, 0.25);
  CHECK(null_effect.rr == 1.0);
  CHECK(null_effect.e_value == 1.0);

  // rr < 1 inverts first
  const RiskRatioReport inverted = risk_ratio(0.0334, 0.0563);
  CHECK(inverted.e_value == doctest::Approx(2.76).epsilon(0.004));
  CHECK(inverted.e_value >= 1.0);

  CHECK_THROWS_AS(risk_ratio(0.1, 0.0), ZeroDenominatorError);
}
