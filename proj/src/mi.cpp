#include "causalbn/mi.hpp"

#include <cmath>

namespace causalbn {

namespace {

constexpr double kLog2 = 0.6931471805599453;  // ln 2

struct CountTable {
  std::vector<int> cards;
  std::vector<std::uint32_t> counts;  // mixed radix, last variable fastest
  std::size_t n = 0;
};

CountTable joint_counts(const Dataset& data, const std::vector<int>& vars) {
  if (data.rows() == 0) throw EmptyDatasetError("dataset has no rows");
  CountTable t;
  std::size_t cells = 1;
  for (int v : vars) {
    t.cards.push_back(static_cast<int>(data.schema().at(v).states.size()));
    cells *= t.cards.back();
  }
  t.counts.assign(cells, 0);
  t.n = data.rows();
  std::vector<std::span<const std::int32_t>> cols;
  for (int v : vars) cols.push_back(data.column(v));
  for (std::size_t r = 0; r < t.n; ++r) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) idx = idx * t.cards[i] + cols[i][r];
    ++t.counts[idx];
  }
  return t;
}

double plogp_sum(const CountTable& t) {
  // sum over cells of c * ln c
  double s = 0.0;
  for (std::uint32_t c : t.counts)
    if (c) s += static_cast<double>(c) * std::log(static_cast<double>(c));
  return s;
}

}  // namespace

double empirical_entropy(const Dataset& data, const std::vector<std::string>& vars) {
  std::vector<int> ids;
  for (const std::string& v : vars) ids.push_back(data.schema().resolve(v));
  const CountTable t = joint_counts(data, ids);
  const double n = static_cast<double>(t.n);
  return (std::log(n) - plogp_sum(t) / n) / kLog2;
}

MiEstimate mutual_information(const Dataset& data, const std::string& x, const std::string& y) {
  return conditional_mi(data, x, y, {});
}

MiEstimate conditional_mi(const Dataset& data, const std::string& x, const std::string& y,
                          const std::vector<std::string>& z) {
  const int xi = data.schema().resolve(x);
  const int yi = data.schema().resolve(y);
  std::vector<int> zi;
  for (const std::string& name : z) {
    const int v = data.schema().resolve(name);
    if (v == xi || v == yi) throw Error("conditioning set must exclude x and y");
    zi.push_back(v);
  }

  // I(X;Y|Z) via the count identity
  //   sum_xyz c_xyz/N * log2( c_xyz * c_z / (c_xz * c_yz) )
  // with the all-variables table counted once and the margins folded out.
  std::vector<int> order(zi);
  order.push_back(xi);
  order.push_back(yi);
  const CountTable t = joint_counts(data, order);
  const int cx = t.cards[t.cards.size() - 2];
  const int cy = t.cards[t.cards.size() - 1];
  const std::size_t strata = t.counts.size() / (static_cast<std::size_t>(cx) * cy);

  MiEstimate est;
  est.n = t.n;
  double nats = 0.0;
  std::vector<double> n_xz(cx), n_yz(cy);
  for (std::size_t s = 0; s < strata; ++s) {
    const std::uint32_t* block = t.counts.data() + s * cx * cy;
    double n_z = 0.0;
    std::fill(n_xz.begin(), n_xz.end(), 0.0);
    std::fill(n_yz.begin(), n_yz.end(), 0.0);
    for (int a = 0; a < cx; ++a)
      for (int b = 0; b < cy; ++b) {
        const double c = block[a * cy + b];
        n_z += c;
        n_xz[a] += c;
        n_yz[b] += c;
      }
    if (n_z == 0.0) continue;
    for (int a = 0; a < cx; ++a)
      for (int b = 0; b < cy; ++b) {
        const double c = block[a * cy + b];
        if (c > 0.0) nats += c * std::log(c * n_z / (n_xz[a] * n_yz[b]));
      }
  }
  est.bits = nats / (static_cast<double>(t.n) * kLog2);
  return est;
}

double interaction_information(const Dataset& data, const std::string& x, const std::string& y,
                               const std::string& z) {
  // H(X)+H(Y)+H(Z) - H(XY) - H(XZ) - H(YZ) + H(XYZ)
  return empirical_entropy(data, {x}) + empirical_entropy(data, {y}) +
         empirical_entropy(data, {z}) - empirical_entropy(data, {x, y}) -
         empirical_entropy(data, {x, z}) - empirical_entropy(data, {y, z}) +
         empirical_entropy(data, {x, y, z});
}

}  // namespace causalbn
