#pragma once

namespace causalbn {

// Execution policy for the data-parallel kernels (pairwise scoring,
// refutation iterations, forward sampling). Serial is the reference
// implementation; Parallel uses OpenMP when compiled in. Results are
// required to be bit-identical between the two.
enum class ExecMode { Serial, Parallel };

inline constexpr ExecMode kDefaultExec = ExecMode::Parallel;

}  // namespace causalbn
