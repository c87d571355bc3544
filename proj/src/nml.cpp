#include "causalbn/nml.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "causalbn/errors.hpp"

namespace causalbn {

namespace {

// ln of C(n,2) by direct summation of the maximized binomial likelihoods.
// Every term lies in (0, 1], so plain double accumulation is stable.
double ln_regret_binary(std::int64_t n) {
  const double dn = static_cast<double>(n);
  double sum = 2.0;  // h = 0 and h = n contribute exactly 1 each
  for (std::int64_t h = 1; h < n; ++h) {
    const double dh = static_cast<double>(h);
    const double lnterm = std::lgamma(dn + 1) - std::lgamma(dh + 1) - std::lgamma(dn - dh + 1) +
                          dh * std::log(dh / dn) + (dn - dh) * std::log((dn - dh) / dn);
    sum += std::exp(lnterm);
  }
  return std::log(sum);
}

double ln_sum_exp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

std::mutex cache_mutex;
std::map<std::int64_t, std::vector<double>> cache;  // n -> ln C(n,k) for k = 1..K

}  // namespace

double log2_multinomial_regret(std::int64_t n, std::int64_t k) {
  if (n < 1) throw Error("multinomial regret needs n >= 1");
  if (k < 1) throw Error("multinomial regret needs k >= 1");
  if (k == 1) return 0.0;

  std::lock_guard<std::mutex> lock(cache_mutex);
  std::vector<double>& chain = cache[n];
  if (chain.empty()) {
    chain.push_back(0.0);                 // k = 1
    chain.push_back(ln_regret_binary(n)); // k = 2
  }
  const double ln_n = std::log(static_cast<double>(n));
  while (static_cast<std::int64_t>(chain.size()) < k) {
    const std::int64_t next_k = static_cast<std::int64_t>(chain.size()) + 1;
    // C(n,k) = C(n,k-1) + n/(k-2) * C(n,k-2)
    const double a = chain[chain.size() - 1];
    const double b = ln_n - std::log(static_cast<double>(next_k - 2)) + chain[chain.size() - 2];
    chain.push_back(ln_sum_exp(a, b));
  }
  return chain[k - 1] / std::log(2.0);
}

double nml_complexity(std::int64_t n, int x_card, int y_card, std::span<const int> z_cards) {
  if (n < 1) throw Error("nml_complexity needs n >= 1");
  if (x_card < 2 || y_card < 2) throw Error("nml_complexity needs cardinalities >= 2");
  std::int64_t q = 1;
  for (int c : z_cards) {
    if (c < 2) throw Error("nml_complexity needs cardinalities >= 2");
    q *= c;
  }
  const double per_stratum =
      log2_multinomial_regret(n, static_cast<std::int64_t>(x_card) * y_card) -
      log2_multinomial_regret(n, x_card) - log2_multinomial_regret(n, y_card);
  return static_cast<double>(q) * std::max(per_stratum, 0.0);
}

}  // namespace causalbn
