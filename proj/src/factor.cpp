#include "causalbn/factor.hpp"

#include <algorithm>

namespace causalbn {

Factor::Factor(std::vector<int> scope, std::vector<int> cards)
    : scope_(std::move(scope)), cards_(std::move(cards)) {
  if (scope_.size() != cards_.size()) throw Error("factor scope/cardinality mismatch");
  if (!std::is_sorted(scope_.begin(), scope_.end()) ||
      std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end())
    throw Error("factor scope must be strictly ascending");
  std::size_t n = 1;
  for (int c : cards_) n *= static_cast<std::size_t>(c);
  values_.assign(n, 0.0);
}

std::size_t Factor::offset(std::span<const int> states) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < scope_.size(); ++i) idx = idx * cards_[i] + states[i];
  return idx;
}

bool Factor::has_var(int var) const {
  return std::binary_search(scope_.begin(), scope_.end(), var);
}

int Factor::position_of(int var) const {
  const auto it = std::lower_bound(scope_.begin(), scope_.end(), var);
  if (it == scope_.end() || *it != var) return -1;
  return static_cast<int>(it - scope_.begin());
}

Factor Factor::product(const Factor& a, const Factor& b) {
  std::vector<int> scope;
  std::vector<int> cards;
  std::merge(a.scope_.begin(), a.scope_.end(), b.scope_.begin(), b.scope_.end(),
             std::back_inserter(scope));
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  for (int v : scope) {
    const int pa = a.position_of(v);
    cards.push_back(pa >= 0 ? a.cards_[pa] : b.cards_[b.position_of(v)]);
  }
  Factor out(scope, cards);

  std::vector<int> state(scope.size(), 0);
  std::vector<int> map_a, map_b;  // position in the merged state per operand slot
  for (int v : a.scope_) map_a.push_back(out.position_of(v));
  for (int v : b.scope_) map_b.push_back(out.position_of(v));
  std::vector<int> sa(a.scope_.size()), sb(b.scope_.size());
  for (std::size_t idx = 0; idx < out.values_.size(); ++idx) {
    for (std::size_t i = 0; i < map_a.size(); ++i) sa[i] = state[map_a[i]];
    for (std::size_t i = 0; i < map_b.size(); ++i) sb[i] = state[map_b[i]];
    out.values_[idx] = a.values_[a.offset(sa)] * b.values_[b.offset(sb)];
    for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i) {
      if (++state[i] < cards[i]) break;
      state[i] = 0;
    }
  }
  return out;
}

Factor Factor::sum_out(int var) const {
  const int pos = position_of(var);
  if (pos < 0) throw Error("sum_out: variable not in scope");
  std::vector<int> scope, cards;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (static_cast<int>(i) == pos) continue;
    scope.push_back(scope_[i]);
    cards.push_back(cards_[i]);
  }
  Factor out(scope, cards);
  // stride of var and of the block to its right
  std::size_t right = 1;
  for (std::size_t i = pos + 1; i < scope_.size(); ++i) right *= cards_[i];
  const std::size_t mid = cards_[pos];
  const std::size_t left = values_.size() / (right * mid);
  std::size_t src = 0;
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t m = 0; m < mid; ++m)
      for (std::size_t r = 0; r < right; ++r) out.values_[l * right + r] += values_[src++];
  return out;
}

Factor Factor::reduce(int var, int state) const {
  const int pos = position_of(var);
  if (pos < 0) throw Error("reduce: variable not in scope");
  std::vector<int> scope, cards;
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (static_cast<int>(i) == pos) continue;
    scope.push_back(scope_[i]);
    cards.push_back(cards_[i]);
  }
  Factor out(scope, cards);
  std::size_t right = 1;
  for (std::size_t i = pos + 1; i < scope_.size(); ++i) right *= cards_[i];
  const std::size_t mid = cards_[pos];
  const std::size_t left = values_.size() / (right * mid);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t r = 0; r < right; ++r)
      out.values_[l * right + r] = values_[(l * mid + state) * right + r];
  return out;
}

double Factor::total() const {
  double t = 0.0;
  for (double v : values_) t += v;
  return t;
}

bool Factor::normalize() {
  const double t = total();
  if (!(t > 0.0)) return false;
  for (double& v : values_) v /= t;
  return true;
}

}  // namespace causalbn
