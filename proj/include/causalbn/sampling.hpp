#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "causalbn/bayesnet.hpp"
#include "causalbn/parallel.hpp"

namespace causalbn {

// Ancestral sampling of n rows. Each row draws from its own RNG stream
// derived from (seed, row), so serial and parallel execution produce the
// same table bit for bit. Columns named in `hide` are dropped from the
// output (unobserved latents).
Dataset forward_sample(const DiscreteBayesNet& bn, std::size_t n, std::uint64_t seed,
                       const std::set<std::string>& hide = {}, ExecMode exec = kDefaultExec);

}  // namespace causalbn
