#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causalbn/discovery.hpp"
#include "causalbn/refute.hpp"

namespace causalbn {

// One estimand declaration from the pipeline config. An empty adjustment
// with auto_adjustment=true asks the identification step to search.
struct EstimandSpec {
  std::string name;
  std::string treatment;
  std::string outcome;
  bool auto_adjustment = false;
  std::set<std::string> adjustment;
  std::string control_state;
  std::string treated_state;
  std::string outcome_state;  // refutation target state (defaults to first)
  // Optional band aggregation: group post-intervention distributions of a
  // multi-band treatment, weighting by the treatment marginal.
  bool aggregate_income_bands = false;
};

struct SimulateSpec {
  std::string generator;  // serialized network document
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::set<std::string> hide;
  std::string output = "synthetic.csv";
};

// One JSON document drives the whole pipeline; CLI flags override fields.
struct PipelineConfig {
  std::string data_path;
  std::string schema_path;
  std::string graph_path;
  std::string output_dir = ".";
  std::string weight_column;  // empty = unweighted ingest
  bool resample = false;      // weighted resampling before analysis
  std::size_t resample_n = 0; // 0 = source row count
  std::uint64_t resample_seed = 0;

  double alpha = 1e-5;
  int adjustment_max_size = 3;
  Blacklist blacklist;
  DiscoveryOptions discovery;
  int refute_iterations = 1000;
  std::uint64_t master_seed = 0;
  double subsample_fraction = 0.8;
  std::vector<EstimandSpec> estimands;
  std::optional<SimulateSpec> simulate;

  std::string config_hash;  // FNV-1a of the canonical source document
};

PipelineConfig load_pipeline_config(const std::string& path);

// Cross-checks config names against the schema (estimand variables, states,
// blacklist entries); ConfigError on the first violation.
void validate_pipeline_config(const PipelineConfig& cfg, const VariableSchema& schema);

}  // namespace causalbn
