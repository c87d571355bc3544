#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "causalbn/dataset.hpp"
#include "causalbn/effects.hpp"
#include "causalbn/graph.hpp"
#include "causalbn/parallel.hpp"

namespace causalbn {

struct RefutationTarget {
  std::string treatment;
  std::string outcome;
  std::set<std::string> adjustment;
  std::string outcome_state;  // the state whose probability shift is tested
  std::string control_state;
  std::string treated_state;
};

struct RefutationConfig {
  int iterations = 1000;
  std::uint64_t master_seed = 0;
  double subsample_fraction = 0.8;  // in (0, 1]
  double alpha = 1e-5;              // smoothing used for every refit
  RefutationTarget target;
  ExecMode exec = kDefaultExec;
};

struct RefutationReport {
  std::string kind;  // "placebo" or "subsample"
  double baseline_pp = 0.0;
  std::vector<double> null_pp;
  double mean_pp = 0.0;
  double median_pp = 0.0;
  double p01_pp = 0.0;
  double p99_pp = 0.0;
  double p_value = 1.0;
  std::uint64_t master_seed = 0;
};

// p-value of Eq.-(12) form: (1 + #{|null_i| >= |delta|}) / (1 + n).
double placebo_p_value(std::span<const double> null_samples, double delta);

// p-value of Eq.-(14) form with deviations taken from the null mean:
// (1 + #{|null_i - mean| >= |delta - mean|}) / (1 + n).
double subsample_p_value(std::span<const double> null_samples, double delta);

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double p01 = 0.0;
  double p99 = 0.0;
};

// Mean, median and 1st/99th percentiles by linear interpolation on the
// sorted samples. EmptySampleError on an empty span.
SummaryStats summarize(std::span<const double> samples);

// Permutes the treatment column (exact multiset preserved), refits the CPTs
// on the fixed DAG and re-estimates the target contrast, n times. Iteration i
// draws from the stream derived from (master_seed, i), so reports are
// bit-identical across runs and execution modes.
RefutationReport placebo_test(const Dataset& data, const CausalDag& dag,
                              const RefutationConfig& cfg);

// Re-estimates the contrast on n draws of floor(fraction * N) distinct rows.
// A failing draw (empty stratum under alpha = 0) is resampled once from the
// stream (master_seed, iterations + i), then SubsampleTooSmallError.
RefutationReport subsample_test(const Dataset& data, const CausalDag& dag,
                                const RefutationConfig& cfg);

}  // namespace causalbn
