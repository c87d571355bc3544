#include "causalbn/effects.hpp"

#include <cmath>

#include "causalbn/infer.hpp"

namespace causalbn {

AdjustmentEstimand::AdjustmentEstimand(const CausalDag& g, std::string treatment,
                                       std::string outcome, std::set<std::string> adjustment)
    : treatment_(std::move(treatment)),
      outcome_(std::move(outcome)),
      adjustment_(std::move(adjustment)) {
  BackdoorCheck check = check_backdoor(g, treatment_, outcome_, adjustment_);
  if (!check.valid) {
    if (check.bad_node)
      throw InvalidAdjustmentError("adjustment member " + *check.bad_node +
                                       " is latent, a descendant of the treatment, or an endpoint",
                                   std::nullopt);
    throw InvalidAdjustmentError(
        "adjustment set leaves an open back-door path: " + render_path(mutilate(g, treatment_), *check.open_path),
        check.open_path);
  }
  certificate_ = std::move(check.certificate);
}

namespace {

// Joint factor over query variables (no evidence), by exact elimination.
Factor joint_over(const DiscreteBayesNet& bn, const std::set<std::string>& vars) {
  return eliminate(bn, vars, {});
}

}  // namespace

std::vector<double> backdoor_adjust(const DiscreteBayesNet& bn, const AdjustmentEstimand& est,
                                    const std::string& x_value) {
  const int x_id = bn.var_index(est.treatment());
  const int y_id = bn.var_index(est.outcome());
  const int x_state = bn.state_index(x_id, x_value);
  const int y_card = static_cast<int>(bn.card(y_id).states.size());

  std::set<std::string> scope_names = est.adjustment();
  scope_names.insert(est.treatment());
  scope_names.insert(est.outcome());
  const Factor joint = joint_over(bn, scope_names);

  const int y_pos = joint.position_of(y_id);
  const int x_pos = joint.position_of(x_id);
  std::vector<int> z_pos;
  std::vector<int> z_cards;
  for (const std::string& z : est.adjustment()) {
    const int pos = joint.position_of(bn.var_index(z));
    z_pos.push_back(pos);
    z_cards.push_back(joint.cards()[pos]);
  }

  std::size_t strata = 1;
  for (int c : z_cards) strata *= static_cast<std::size_t>(c);

  std::vector<double> result(y_card, 0.0);
  std::vector<int> state(joint.scope().size(), 0);
  std::vector<int> z_state(z_pos.size(), 0);
  for (std::size_t s = 0; s < strata; ++s) {
    for (std::size_t i = 0; i < z_pos.size(); ++i) state[z_pos[i]] = z_state[i];

    // P(z) and P(x, z) by summing the joint over the free positions.
    double p_z = 0.0, p_xz = 0.0;
    std::vector<double> p_xyz(y_card, 0.0);
    for (int xv = 0; xv < joint.cards()[x_pos]; ++xv) {
      state[x_pos] = xv;
      for (int yv = 0; yv < y_card; ++yv) {
        state[y_pos] = yv;
        const double p = joint.at(state);
        p_z += p;
        if (xv == x_state) {
          p_xz += p;
          p_xyz[yv] = p;
        }
      }
    }
    if (p_z > 0.0) {
      if (p_xz <= 0.0) {
        std::string stratum;
        int i = 0;
        for (const std::string& z : est.adjustment()) {
          if (!stratum.empty()) stratum += ", ";
          stratum += z + "=" + bn.card(bn.var_index(z)).states[z_state[i]];
          ++i;
        }
        throw UnsupportedStratumError("positivity violation: P(" + est.treatment() + "=" + x_value +
                                      " | " + (stratum.empty() ? "{}" : stratum) +
                                      ") = 0 on a stratum with positive mass");
      }
      for (int yv = 0; yv < y_card; ++yv) result[yv] += (p_xyz[yv] / p_xz) * p_z;
    }

    for (int i = static_cast<int>(z_state.size()) - 1; i >= 0; --i) {
      if (++z_state[i] < z_cards[i]) break;
      z_state[i] = 0;
    }
  }
  return result;
}

EffectReport treatment_effect(const DiscreteBayesNet& bn, const AdjustmentEstimand& est,
                              const std::string& control, const std::string& treated) {
  EffectReport r;
  r.kind = "interventional";
  r.treatment = est.treatment();
  r.outcome = est.outcome();
  r.control_state = control;
  r.treated_state = treated;
  r.outcome_states = bn.card(est.outcome()).states;
  r.control_dist = backdoor_adjust(bn, est, control);
  r.treated_dist = backdoor_adjust(bn, est, treated);
  for (std::size_t i = 0; i < r.outcome_states.size(); ++i)
    r.delta_pp.push_back((r.treated_dist[i] - r.control_dist[i]) * 100.0);
  return r;
}

EffectReport observational_contrast(const DiscreteBayesNet& bn, const std::string& x,
                                    const std::string& y, const std::string& control,
                                    const std::string& treated) {
  EffectReport r;
  r.kind = "observational";
  r.treatment = x;
  r.outcome = y;
  r.control_state = control;
  r.treated_state = treated;
  r.outcome_states = bn.card(y).states;
  r.control_dist = eliminate(bn, {y}, {{x, control}}).values();
  r.treated_dist = eliminate(bn, {y}, {{x, treated}}).values();
  for (std::size_t i = 0; i < r.outcome_states.size(); ++i)
    r.delta_pp.push_back((r.treated_dist[i] - r.control_dist[i]) * 100.0);
  return r;
}

std::vector<std::vector<double>> aggregate_bands(
    const std::vector<std::vector<double>>& per_band, const std::vector<double>& marginals,
    const BandPartition& partition) {
  if (per_band.size() != marginals.size())
    throw Error("aggregate_bands: one marginal per band distribution required");
  std::vector<bool> used(per_band.size(), false);
  std::vector<std::vector<double>> out;
  for (const auto& [name, bands] : partition.groups) {
    if (bands.empty()) throw EmptyGroupError("band group '" + name + "' is empty");
    double mass = 0.0;
    std::vector<double> acc;
    for (int b : bands) {
      if (b < 0 || b >= static_cast<int>(per_band.size()))
        throw Error("band index out of range in group '" + name + "'");
      if (used[b]) throw Error("band " + std::to_string(b) + " assigned to two groups");
      used[b] = true;
      mass += marginals[b];
      if (acc.empty()) acc.assign(per_band[b].size(), 0.0);
      if (per_band[b].size() != acc.size())
        throw Error("band distributions must share one outcome space");
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += per_band[b][i] * marginals[b];
    }
    if (mass <= 0.0) throw ZeroMassGroupError("band group '" + name + "' has zero mass");
    for (double& v : acc) v /= mass;
    out.push_back(std::move(acc));
  }
  for (std::size_t b = 0; b < used.size(); ++b)
    if (!used[b]) throw Error("band " + std::to_string(b) + " not covered by the partition");
  return out;
}

RiskRatioReport risk_ratio(double p_treated, double p_control) {
  if (!(p_control > 0.0)) throw ZeroDenominatorError("risk ratio needs p_control > 0");
  if (p_treated < 0.0) throw Error("risk ratio needs p_treated >= 0");
  RiskRatioReport r;
  r.p_treated = p_treated;
  r.p_control = p_control;
  r.rr = p_treated / p_control;
  const double rr = r.rr >= 1.0 ? r.rr : 1.0 / r.rr;
  r.e_value = rr + std::sqrt(rr * (rr - 1.0));
  return r;
}

}  // namespace causalbn
