#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "causalbn/schema.hpp"

namespace causalbn {

// Column-major table of state indices bound to a schema, with optional
// per-row sampling weights.
class Dataset {
 public:
  explicit Dataset(std::shared_ptr<const VariableSchema> schema);

  const VariableSchema& schema() const { return *schema_; }
  std::shared_ptr<const VariableSchema> schema_ptr() const { return schema_; }

  std::size_t rows() const { return cols_.empty() ? 0 : cols_[0].size(); }
  std::size_t columns() const { return cols_.size(); }
  std::span<const std::int32_t> column(int var) const { return cols_[var]; }
  std::span<const std::int32_t> column(const std::string& name) const;
  std::int32_t cell(std::size_t row, int var) const { return cols_[var][row]; }

  bool has_weights() const { return !weights_.empty(); }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t row) const { return weights_.empty() ? 1.0 : weights_[row]; }

  void append_row(std::span<const std::int32_t> states, double weight);
  void append_row(std::span<const std::int32_t> states);
  void set_weights(std::vector<double> weights);

  // Replaces one column (used by the placebo permutation); the new column
  // must hold valid state indices of the same variable.
  Dataset with_column(int var, std::vector<std::int32_t> values) const;
  Dataset subset(std::span<const std::size_t> row_indices) const;

 private:
  std::shared_ptr<const VariableSchema> schema_;
  std::vector<std::vector<std::int32_t>> cols_;
  std::vector<double> weights_;
};

// CSV with a header row naming schema variables (any order); cells are state
// labels. An optional weight column is picked up by name when given.
Dataset load_csv(const std::string& path, std::shared_ptr<const VariableSchema> schema,
                 const std::string& weight_column = "");
void save_csv(const Dataset& data, const std::string& path,
              const std::string& weight_column = "");

// Applies a total state recode to one variable; rows mapped to a dropped
// state are removed, all other columns pass through untouched.
Dataset recode(const Dataset& data, const RecodeMap& map);

// Bootstrap with selection probabilities proportional to the weights.
// The output has exactly n_out rows and unit weights.
Dataset weighted_resample(const Dataset& data, std::size_t n_out, std::uint64_t seed);

// Band index per value under the lower-inclusive/upper-exclusive convention:
// band 0 is (-inf, edges[0]), band i is [edges[i-1], edges[i]), the last band
// is [edges.back(), +inf). Edges must be strictly increasing.
std::vector<int> discretize_density(std::span<const double> values,
                                    std::span<const double> edges);

}  // namespace causalbn
