#include "causalbn/refute.hpp"

#include <algorithm>
#include <cmath>

#include "causalbn/rng.hpp"

namespace causalbn {

double placebo_p_value(std::span<const double> null_samples, double delta) {
  std::size_t hits = 0;
  for (double d : null_samples)
    if (std::abs(d) >= std::abs(delta)) ++hits;
  return static_cast<double>(1 + hits) / static_cast<double>(1 + null_samples.size());
}

double subsample_p_value(std::span<const double> null_samples, double delta) {
  double mean = 0.0;
  for (double d : null_samples) mean += d;
  mean /= static_cast<double>(null_samples.size());
  std::size_t hits = 0;
  for (double d : null_samples)
    if (std::abs(d - mean) >= std::abs(delta - mean)) ++hits;
  return static_cast<double>(1 + hits) / static_cast<double>(1 + null_samples.size());
}

SummaryStats summarize(std::span<const double> samples) {
  if (samples.empty()) throw EmptySampleError("no samples to summarize");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double rank = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(rank));
    const double frac = rank - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
  };
  SummaryStats s;
  for (double d : sorted) s.mean += d;
  s.mean /= static_cast<double>(sorted.size());
  s.median = quantile(0.5);
  s.p01 = quantile(0.01);
  s.p99 = quantile(0.99);
  return s;
}

namespace {

double estimate_delta_pp(const Dataset& data, const CausalDag& dag, const RefutationTarget& t,
                         double alpha, const AdjustmentEstimand& est) {
  const DiscreteBayesNet bn = fit_mle(dag, data, alpha);
  const EffectReport r = treatment_effect(bn, est, t.control_state, t.treated_state);
  const int state = bn.state_index(bn.var_index(t.outcome), t.outcome_state);
  return r.delta_pp[state];
}

void validate_config(const RefutationConfig& cfg) {
  if (cfg.iterations < 1) throw Error("refutation needs at least one iteration");
  if (!(cfg.subsample_fraction > 0.0) || cfg.subsample_fraction > 1.0)
    throw Error("subsample fraction must lie in (0, 1]");
}

RefutationReport finalize(std::string kind, double baseline, std::vector<double> null_pp,
                          double p, std::uint64_t seed) {
  RefutationReport rep;
  rep.kind = std::move(kind);
  rep.baseline_pp = baseline;
  const SummaryStats s = summarize(null_pp);
  rep.null_pp = std::move(null_pp);
  rep.mean_pp = s.mean;
  rep.median_pp = s.median;
  rep.p01_pp = s.p01;
  rep.p99_pp = s.p99;
  rep.p_value = p;
  rep.master_seed = seed;
  return rep;
}

template <typename Body>
void run_iterations(int n, ExecMode exec, const Body& body) {
  if (exec == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
}

}  // namespace

RefutationReport placebo_test(const Dataset& data, const CausalDag& dag,
                              const RefutationConfig& cfg) {
  validate_config(cfg);
  const RefutationTarget& t = cfg.target;
  const AdjustmentEstimand est(dag, t.treatment, t.outcome, t.adjustment);
  const double baseline = estimate_delta_pp(data, dag, t, cfg.alpha, est);

  const int treat_col = data.schema().resolve(t.treatment);
  const std::vector<std::int32_t> original(data.column(treat_col).begin(),
                                           data.column(treat_col).end());

  std::vector<double> null_pp(cfg.iterations, 0.0);
  std::vector<std::string> failure(cfg.iterations);
  run_iterations(cfg.iterations, cfg.exec, [&](int i) {
    try {
      Rng rng(derive_stream(cfg.master_seed, static_cast<std::uint64_t>(i)));
      std::vector<std::int32_t> permuted = original;
      rng.shuffle(std::span<std::int32_t>(permuted));
      const Dataset placebo = data.with_column(treat_col, std::move(permuted));
      null_pp[i] = estimate_delta_pp(placebo, dag, t, cfg.alpha, est);
    } catch (const std::exception& e) {
      failure[i] = e.what();
    }
  });
  for (int i = 0; i < cfg.iterations; ++i)
    if (!failure[i].empty())
      throw Error("placebo iteration " + std::to_string(i) + " failed: " + failure[i]);

  const double p = placebo_p_value(null_pp, baseline);
  return finalize("placebo", baseline, std::move(null_pp), p, cfg.master_seed);
}

RefutationReport subsample_test(const Dataset& data, const CausalDag& dag,
                                const RefutationConfig& cfg) {
  validate_config(cfg);
  const RefutationTarget& t = cfg.target;
  const AdjustmentEstimand est(dag, t.treatment, t.outcome, t.adjustment);
  const double baseline = estimate_delta_pp(data, dag, t, cfg.alpha, est);

  const std::size_t n_rows = data.rows();
  const std::size_t draw = static_cast<std::size_t>(cfg.subsample_fraction * n_rows);
  if (draw == 0) throw SubsampleTooSmallError("subsample draw would be empty");

  auto run_draw = [&](std::uint64_t stream) {
    Rng rng(derive_stream(cfg.master_seed, stream));
    // Partial Fisher-Yates: the first `draw` slots become the sample.
    std::vector<std::size_t> rows(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) rows[r] = r;
    for (std::size_t i = 0; i < draw; ++i) {
      const std::size_t j = i + rng.uniform_index(n_rows - i);
      std::swap(rows[i], rows[j]);
    }
    rows.resize(draw);
    return estimate_delta_pp(data.subset(rows), dag, t, cfg.alpha, est);
  };

  std::vector<double> null_pp(cfg.iterations, 0.0);
  std::vector<std::string> failure(cfg.iterations);
  run_iterations(cfg.iterations, cfg.exec, [&](int i) {
    try {
      null_pp[i] = run_draw(static_cast<std::uint64_t>(i));
    } catch (const std::exception&) {
      try {
        // one retry on a fresh stream, then a hard error
        null_pp[i] = run_draw(static_cast<std::uint64_t>(cfg.iterations) +
                              static_cast<std::uint64_t>(i));
      } catch (const std::exception& e) {
        failure[i] = e.what();
      }
    }
  });
  for (int i = 0; i < cfg.iterations; ++i)
    if (!failure[i].empty())
      throw SubsampleTooSmallError("subsample iteration " + std::to_string(i) +
                                   " failed twice: " + failure[i]);

  const double p = subsample_p_value(null_pp, baseline);
  return finalize("subsample", baseline, std::move(null_pp), p, cfg.master_seed);
}

}  // namespace causalbn
