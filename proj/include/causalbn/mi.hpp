#pragma once

#include <string>
#include <vector>

#include "causalbn/dataset.hpp"

namespace causalbn {

struct MiEstimate {
  double bits = 0.0;
  std::size_t n = 0;
};

// Plug-in estimates over raw row frequencies (sampling weights are not
// consulted; the pipeline resamples to unit weights first). Zero-count cells
// contribute nothing (0 log 0 = 0). Units are bits throughout.

MiEstimate mutual_information(const Dataset& data, const std::string& x, const std::string& y);

// I(X;Y | Z); an empty z reduces to mutual_information.
MiEstimate conditional_mi(const Dataset& data, const std::string& x, const std::string& y,
                          const std::vector<std::string>& z);

// Signed interaction information I(X;Y;Z) = I(X;Y) - I(X;Y|Z), computed via
// joint entropies. Positive marks chain/fork redundancy, negative a collider
// signature. Deliberately a separate arithmetic route from the two functions
// above so the decomposition identity is a real cross-check.
double interaction_information(const Dataset& data, const std::string& x, const std::string& y,
                               const std::string& z);

// Empirical joint entropy H(vars) in bits.
double empirical_entropy(const Dataset& data, const std::vector<std::string>& vars);

}  // namespace causalbn
