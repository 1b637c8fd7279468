// Compares the serial reference trial loop against the OpenMP kernel on the
// stock operating point and verifies that both produce identical counts.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relaysim/experiment.hpp"
#include "relaysim/montecarlo.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t trials = 2'000'000;
  std::uint64_t seed = 1;
  if (argc > 1) trials = std::strtoull(argv[1], nullptr, 10);
  if (argc > 2) seed = std::strtoull(argv[2], nullptr, 10);

  relaysim::ExperimentConfig cfg;
  cfg.seed = seed;
  const relaysim::SystemConfig sys = relaysim::resolve_system(cfg);

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif
  std::cout << "trials:  " << trials << "\n";

  auto t0 = Clock::now();
  const relaysim::TrialCounts serial = relaysim::count_outages(
      sys, seed, 0, trials, relaysim::Execution::serial);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
  const relaysim::TrialCounts parallel = relaysim::count_outages(
      sys, seed, 0, trials, relaysim::Execution::parallel);
  const double t_parallel = seconds_since(t0);

  std::cout << "serial:   " << t_serial << " s ("
            << static_cast<double>(trials) / t_serial / 1e6 << " Mtrials/s)\n";
  std::cout << "parallel: " << t_parallel << " s ("
            << static_cast<double>(trials) / t_parallel / 1e6
            << " Mtrials/s)\n";
  std::cout << "speedup:  " << t_serial / t_parallel << "x\n";

  const bool same = serial.lbrs == parallel.lbrs &&
                    serial.cors == parallel.cors &&
                    serial.cpors == parallel.cpors;
  std::cout << "counts (lbrs/cors/cpors): " << serial.lbrs << "/"
            << serial.cors << "/" << serial.cpors
            << (same ? "  [serial == parallel]" : "  [MISMATCH]") << "\n";
  return same ? 0 : 1;
}
