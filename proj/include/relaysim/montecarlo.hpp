#ifndef RELAYSIM_MONTECARLO_HPP_
#define RELAYSIM_MONTECARLO_HPP_

#include <array>
#include <cstdint>

#include "relaysim/model.hpp"
#include "relaysim/schemes.hpp"

namespace relaysim {

enum class Method { monte_carlo, analytic, analytic_upper_bound, asymptotic };

const char* to_string(Method m);

/// Serial is the reference implementation; parallel is the OpenMP kernel.
/// Both must produce identical counts for identical inputs, which holds
/// because trials are pure functions of (seed, trial index) and the only
/// reduction is integer addition.
enum class Execution { serial, parallel };

/// Chunk size hint for the parallel loop. Scheduling granularity only; it
/// never affects results.
inline constexpr std::uint64_t kTrialsPerBlock = 8192;

struct OutageResult {
  Scheme scheme = Scheme::lbrs;
  Method method = Method::monte_carlo;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t n_trials = 0;
  std::uint64_t n_outages = 0;
  std::uint64_t master_seed = 0;
};

struct WilsonInterval {
  double low = 0;
  double high = 1;
};

/// 95% score interval by default. Well behaved at 0 and 1 successes, which
/// high-SNR operating points regularly produce.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

/// Outage counts for trials in [trial_begin, trial_end), all three policies
/// evaluated on shared draws. Deterministic given (cfg, seed, range).
struct TrialCounts {
  std::uint64_t lbrs = 0;
  std::uint64_t cors = 0;
  std::uint64_t cpors = 0;
  std::uint64_t trials = 0;
};

TrialCounts count_outages(const SystemConfig& cfg, std::uint64_t master_seed,
                          std::uint64_t trial_begin, std::uint64_t trial_end,
                          Execution exec = Execution::parallel);

/// Estimates Pr{delay >= deadline} for one policy. The inequality is
/// inclusive, which matters for the deterministic no-eligible-relay branch.
OutageResult estimate_outage(const SystemConfig& cfg, Scheme scheme,
                             std::uint64_t n_trials, std::uint64_t master_seed,
                             Execution exec = Execution::parallel);

/// All three policies on identical draws. Because the latency-best policy
/// dominates per realization, its outage count is <= each of the others'
/// counts exactly, not just in expectation.
std::array<OutageResult, 3> estimate_all_schemes_shared_draws(
    const SystemConfig& cfg, std::uint64_t n_trials, std::uint64_t master_seed,
    Execution exec = Execution::parallel);

}  // namespace relaysim

#endif  // RELAYSIM_MONTECARLO_HPP_
