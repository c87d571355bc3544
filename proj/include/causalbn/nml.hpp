#pragma once

#include <cstdint>
#include <span>

namespace causalbn {

// log2 of the multinomial normalized-maximum-likelihood regret C(n, k):
// the sum over all length-n sequences of the maximized likelihood of a
// k-category multinomial. Exact: C(n,1) = 1, C(n,2) by direct summation,
// and the two-term linear recurrence over categories above that, evaluated
// in log space. Values are cached per (n, k).
double log2_multinomial_regret(std::int64_t n, std::int64_t k);

// Complexity of the dependence X-Y given conditioning cardinalities z_cards,
// in bits:
//   q * ( log2C(n, rx*ry) - log2C(n, rx) - log2C(n, ry) ),  q = prod z_cards.
// Monotone non-decreasing in n and in each cardinality; the leading term is
// (rx-1)(ry-1)*q/2 * log2 n, matching the MDL degrees of freedom. An edge
// survives pruning only when its residual conditional MI exceeds this value
// divided by n.
double nml_complexity(std::int64_t n, int x_card, int y_card, std::span<const int> z_cards);

}  // namespace causalbn
