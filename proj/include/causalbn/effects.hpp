#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causalbn/backdoor.hpp"
#include "causalbn/bayesnet.hpp"
#include "causalbn/schema.hpp"

namespace causalbn {

// Thrown when a proposed adjustment set fails the back-door criterion; the
// message names either the offending member or the first open path.
class InvalidAdjustmentError : public Error {
 public:
  InvalidAdjustmentError(const std::string& msg, std::optional<Path> open_path)
      : Error(msg), open_path(std::move(open_path)) {}
  std::optional<Path> open_path;
};

// Treatment/outcome pair with an adjustment set whose back-door certificate
// was validated at construction against the identification graph.
class AdjustmentEstimand {
 public:
  AdjustmentEstimand(const CausalDag& g, std::string treatment, std::string outcome,
                     std::set<std::string> adjustment);

  const std::string& treatment() const { return treatment_; }
  const std::string& outcome() const { return outcome_; }
  const std::set<std::string>& adjustment() const { return adjustment_; }
  const std::vector<PathWitness>& certificate() const { return certificate_; }

 private:
  std::string treatment_;
  std::string outcome_;
  std::set<std::string> adjustment_;
  std::vector<PathWitness> certificate_;
};

// P(outcome | do(treatment = x_value)) by the adjustment formula
// sum_z P(Y | X, Z) P(Z), every term an exact elimination query on bn.
// A stratum with positive mass but zero mass on (X = x, Z = z) violates
// positivity and raises UnsupportedStratumError naming the stratum.
std::vector<double> backdoor_adjust(const DiscreteBayesNet& bn, const AdjustmentEstimand& est,
                                    const std::string& x_value);

struct EffectReport {
  std::string kind;  // "interventional" or "observational"
  std::string treatment, outcome;
  std::string control_state, treated_state;
  std::vector<std::string> outcome_states;
  std::vector<double> control_dist;
  std::vector<double> treated_dist;
  std::vector<double> delta_pp;  // (treated - control) * 100 per outcome state
};

EffectReport treatment_effect(const DiscreteBayesNet& bn, const AdjustmentEstimand& est,
                              const std::string& control, const std::string& treated);

// Observational contrast P(Y | X = treated) - P(Y | X = control), exact VE.
EffectReport observational_contrast(const DiscreteBayesNet& bn, const std::string& x,
                                    const std::string& y, const std::string& control,
                                    const std::string& treated);

// Marginal-weighted averages of per-band distributions over named groups:
// group g gets sum_{i in g} dist[i] * marginal[i] / sum_{i in g} marginal[i].
std::vector<std::vector<double>> aggregate_bands(
    const std::vector<std::vector<double>>& per_band, const std::vector<double>& marginals,
    const BandPartition& partition);

struct RiskRatioReport {
  double rr = 1.0;
  double e_value = 1.0;
  double p_treated = 0.0;
  double p_control = 0.0;
};

// rr = p_treated / p_control; the E-value uses rr when rr >= 1 and its
// reciprocal otherwise, so it is always >= 1.
RiskRatioReport risk_ratio(double p_treated, double p_control);

}  // namespace causalbn
