// Wall-clock comparison of the serial reference kernels against the OpenMP
// paths: skeleton scoring, placebo refutation, forward sampling.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "causalbn/discovery.hpp"
#include "causalbn/ev_study.hpp"
#include "causalbn/refute.hpp"
#include "causalbn/sampling.hpp"

using namespace causalbn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double timed(const F& f) {
  const auto start = Clock::now();
  f();
  return seconds_since(start);
}

void report(const char* kernel, double serial_s, double parallel_s) {
  std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n", kernel, serial_s,
              parallel_s, serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n_rows = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 100000;
  const int iterations = argc > 2 ? std::atoi(argv[2]) : 200;

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not compiled in; both paths run serially\n");
#endif
  std::printf("rows = %zu, refutation iterations = %d\n\n", n_rows, iterations);

  const DiscreteBayesNet& gen = ev_study_network();
  const Dataset sample = forward_sample(gen, n_rows, 11, {"U1", "U2"});

  const double fs_serial =
      timed([&] { forward_sample(gen, n_rows, 11, {"U1", "U2"}, ExecMode::Serial); });
  const double fs_parallel =
      timed([&] { forward_sample(gen, n_rows, 11, {"U1", "U2"}, ExecMode::Parallel); });
  report("forward_sample", fs_serial, fs_parallel);

  Blacklist none;
  DiscoveryOptions serial_opts;
  serial_opts.exec = ExecMode::Serial;
  DiscoveryOptions parallel_opts;
  parallel_opts.exec = ExecMode::Parallel;
  const double sk_serial = timed([&] { prune_skeleton(sample, none, serial_opts); });
  const double sk_parallel = timed([&] { prune_skeleton(sample, none, parallel_opts); });
  report("prune_skeleton", sk_serial, sk_parallel);

  RefutationConfig cfg;
  cfg.iterations = iterations;
  cfg.master_seed = 99;
  cfg.target = {"V7", "Y", {"V8", "V9"}, "Already own", "On-street", "Off-street"};
  const CausalDag dag = observed_projection(ev_study_dag());
  const Dataset small = forward_sample(gen, std::min<std::size_t>(n_rows, 5000), 12, {"U1", "U2"});
  cfg.exec = ExecMode::Serial;
  const double pl_serial = timed([&] { placebo_test(small, dag, cfg); });
  cfg.exec = ExecMode::Parallel;
  const double pl_parallel = timed([&] { placebo_test(small, dag, cfg); });
  report("placebo_test", pl_serial, pl_parallel);

  return 0;
}
