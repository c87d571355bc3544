#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalbn/errors.hpp"

namespace causalbn {

struct VariableSpec {
  std::string name;                 // column header, unique
  std::string symbol;               // short symbol (Y, V1, ...), unique
  std::vector<std::string> states;  // declared order fixes state indices
  std::vector<double> band_edges;   // nonempty for banded numeric variables
  std::vector<double> marginals;    // optional reference marginal distribution
};

class VariableSchema {
 public:
  void add(VariableSpec spec);

  std::size_t size() const { return vars_.size(); }
  const VariableSpec& at(std::size_t i) const { return vars_[i]; }
  const std::vector<VariableSpec>& variables() const { return vars_; }

  bool has_name(const std::string& name) const { return by_name_.count(name) != 0; }
  int index_of(const std::string& name) const;
  int index_of_symbol(const std::string& symbol) const;
  // Accepts either the column name or the symbol; SchemaMismatchError when
  // neither matches.
  int resolve(const std::string& name_or_symbol) const;
  bool can_resolve(const std::string& name_or_symbol) const;
  int state_index(int var, const std::string& label) const;  // -1 when unknown

 private:
  std::vector<VariableSpec> vars_;
  std::map<std::string, int> by_name_;
  std::map<std::string, int> by_symbol_;
};

// Total recode of one variable's states; an empty target drops the row.
struct RecodeMap {
  std::string variable;
  std::vector<std::pair<std::string, std::optional<std::string>>> mapping;
};

// Named groups of band indices; disjoint cover of all bands expected where
// the consumer demands a partition.
struct BandPartition {
  std::vector<std::pair<std::string, std::vector<int>>> groups;
};

// Two-group split of the 8-band income variable (symbol V1): bands 1-6 form
// the low group and 7-8 the high group.
BandPartition income_partition(const VariableSchema& schema);

}  // namespace causalbn
