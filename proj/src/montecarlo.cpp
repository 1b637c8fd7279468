#include "relaysim/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "relaysim/channel.hpp"

namespace relaysim {

const char* to_string(Method m) {
  switch (m) {
    case Method::monte_carlo:
      return "monte-carlo";
    case Method::analytic:
      return "analytic";
    case Method::analytic_upper_bound:
      return "analytic-upper-bound";
    case Method::asymptotic:
      return "asymptotic";
  }
  return "?";
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  double lo = center - half;
  double hi = center + half;
  // The score interval hits the boundary exactly at 0 or n successes;
  // rounding must not leave it a hair off.
  if (successes == 0 || lo < 0) lo = 0;
  if (successes == trials || hi > 1) hi = 1;
  return {lo, hi};
}

namespace {

struct TrialKernel {
  RelayPrecomp pre;
  std::uint64_t seed;

  // Bit 0: latency-best outage, bit 1: best-rate, bit 2: max-CPU.
  unsigned operator()(std::uint64_t trial, std::span<double> h2,
                      std::span<double> g2) const {
    draw_into({seed, trial}, pre.size(), h2, g2);
    const PerDrawOutcomes o = select_all(pre, h2, g2);
    unsigned mask = 0;
    if (o.lbrs.realized_delay >= pre.deadline) mask |= 1u;
    if (o.cors.realized_delay >= pre.deadline) mask |= 2u;
    if (o.cpors.realized_delay >= pre.deadline) mask |= 4u;
    return mask;
  }
};

}  // namespace

TrialCounts count_outages(const SystemConfig& cfg, std::uint64_t master_seed,
                          std::uint64_t trial_begin, std::uint64_t trial_end,
                          Execution exec) {
  cfg.validate();
  if (trial_end < trial_begin)
    throw std::invalid_argument("count_outages: empty trial range");
  const TrialKernel kernel{RelayPrecomp::make(cfg), master_seed};
  const std::size_t n = cfg.n_relays();

  std::uint64_t c_lbrs = 0, c_cors = 0, c_cpors = 0;
  const long long b = static_cast<long long>(trial_begin);
  const long long e = static_cast<long long>(trial_end);

  if (exec == Execution::parallel) {
#pragma omp parallel reduction(+ : c_lbrs, c_cors, c_cpors)
    {
      std::vector<double> h2(n), g2(n);
#pragma omp for schedule(static, kTrialsPerBlock)
      for (long long t = b; t < e; ++t) {
        const unsigned mask = kernel(static_cast<std::uint64_t>(t), h2, g2);
        c_lbrs += mask & 1u;
        c_cors += (mask >> 1) & 1u;
        c_cpors += (mask >> 2) & 1u;
      }
    }
  } else {
    std::vector<double> h2(n), g2(n);
    for (long long t = b; t < e; ++t) {
      const unsigned mask = kernel(static_cast<std::uint64_t>(t), h2, g2);
      c_lbrs += mask & 1u;
      c_cors += (mask >> 1) & 1u;
      c_cpors += (mask >> 2) & 1u;
    }
  }

  return {c_lbrs, c_cors, c_cpors, trial_end - trial_begin};
}

namespace {

OutageResult make_mc_result(Scheme scheme, std::uint64_t outages,
                            std::uint64_t trials, std::uint64_t seed) {
  OutageResult r;
  r.scheme = scheme;
  r.method = Method::monte_carlo;
  r.n_trials = trials;
  r.n_outages = outages;
  r.master_seed = seed;
  r.p_hat = trials ? static_cast<double>(outages) / trials : 0.0;
  const WilsonInterval ci = wilson_interval(outages, trials);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  return r;
}

}  // namespace

OutageResult estimate_outage(const SystemConfig& cfg, Scheme scheme,
                             std::uint64_t n_trials, std::uint64_t master_seed,
                             Execution exec) {
  if (n_trials == 0)
    throw std::invalid_argument("estimate_outage: n_trials must be >= 1");
  const TrialCounts c = count_outages(cfg, master_seed, 0, n_trials, exec);
  const std::uint64_t k = scheme == Scheme::lbrs   ? c.lbrs
                          : scheme == Scheme::cors ? c.cors
                                                   : c.cpors;
  return make_mc_result(scheme, k, n_trials, master_seed);
}

std::array<OutageResult, 3> estimate_all_schemes_shared_draws(
    const SystemConfig& cfg, std::uint64_t n_trials, std::uint64_t master_seed,
    Execution exec) {
  if (n_trials == 0)
    throw std::invalid_argument(
        "estimate_all_schemes_shared_draws: n_trials must be >= 1");
  const TrialCounts c = count_outages(cfg, master_seed, 0, n_trials, exec);
  return {make_mc_result(Scheme::lbrs, c.lbrs, n_trials, master_seed),
          make_mc_result(Scheme::cors, c.cors, n_trials, master_seed),
          make_mc_result(Scheme::cpors, c.cpors, n_trials, master_seed)};
}

}  // namespace relaysim
