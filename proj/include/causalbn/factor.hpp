#pragma once

#include <span>
#include <vector>

#include "causalbn/errors.hpp"

namespace causalbn {

// Dense table over a sorted scope of variable ids. The last scope variable
// varies fastest. Cardinalities here are tiny (tens of states), so dense
// storage is the right trade.
class Factor {
 public:
  Factor() = default;
  Factor(std::vector<int> scope, std::vector<int> cards);

  const std::vector<int>& scope() const { return scope_; }
  const std::vector<int>& cards() const { return cards_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double at(std::span<const int> states) const { return values_[offset(states)]; }
  double& at(std::span<const int> states) { return values_[offset(states)]; }
  std::size_t offset(std::span<const int> states) const;

  bool has_var(int var) const;
  int position_of(int var) const;  // -1 when absent

  static Factor product(const Factor& a, const Factor& b);
  Factor sum_out(int var) const;
  Factor reduce(int var, int state) const;
  double total() const;
  // Scales to total mass 1; returns false when the mass is not positive.
  bool normalize();

 private:
  std::vector<int> scope_;   // ascending variable ids
  std::vector<int> cards_;   // aligned with scope_
  std::vector<double> values_;
};

}  // namespace causalbn
