#ifndef RELAYSIM_ANALYTIC_HPP_
#define RELAYSIM_ANALYTIC_HPP_

#include <span>
#include <stdexcept>
#include <vector>

#include "relaysim/model.hpp"
#include "relaysim/schemes.hpp"

namespace relaysim {

/// Thrown when an outage integral cannot reach its tolerance. Sweep drivers
/// catch it per point; it never aborts a whole experiment.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyticOptions {
  double inner_tol = 1e-9;  // finite-interval integrals
  double outer_tol = 1e-7;  // semi-infinite tail integrals
};

/// Distribution of one hop's transmission time measured in units of L/W
/// (so all thresholds are dimensionless). For a Rayleigh-faded hop the time
/// is payload_ratio / log2(1 + SNR), giving
///   CDF  F(t) = exp(-c * (2^(r/t) - 1))          for t > 0,
///   pdf  f(t) = c r ln2 * 2^(r/t) / t^2 * F(t),
/// with c = (1+d^alpha) sigma^2 / P and r the payload ratio (1 uplink,
/// compute_ratio downlink). Both evaluators work in log space and return
/// exactly 0 once the exponent under- or overflows, so integrand wrappers
/// never see NaN from 0 * inf.
struct HopTimeDistribution {
  double scale_c = 1.0;
  double payload_ratio = 1.0;

  double cdf(double t) const;
  double pdf(double t) const;
};

HopTimeDistribution uplink_distribution(const SystemConfig& cfg,
                                        std::size_t index);
HopTimeDistribution downlink_distribution(const SystemConfig& cfg,
                                          std::size_t index);

double hop_time_cdf(const HopTimeDistribution& dist, double t);

/// Pr{X + Y >= threshold} for independent hop times Y ~ up, X ~ down.
/// Computed as 1 - integral_0^T f_up(y) F_down(T-y) dy: one adaptive pass
/// over a smooth integrand with the closed-form CDF inside.
double sum_tail_probability(const HopTimeDistribution& up,
                            const HopTimeDistribution& down, double threshold,
                            const AnalyticOptions& opts = {});

/// Density of the two-hop time sum at z, by direct convolution of the pdfs.
/// The effective quadrature tolerance tightens like tol/(1+z^2) so that
/// integrating this density over a semi-infinite tail stays unbiased.
double sum_time_pdf(const HopTimeDistribution& up,
                    const HopTimeDistribution& down, double z,
                    double tol = 1e-9);

/// Same quantity as sum_tail_probability by the two-level route: convolve
/// the pdfs into f_Z via sum_time_pdf, then integrate the tail of f_Z over
/// [T, infinity). Kept as an independent cross-check of
/// sum_tail_probability; slower by construction.
double sum_tail_probability_nested(const HopTimeDistribution& up,
                                   const HopTimeDistribution& down,
                                   double threshold,
                                   const AnalyticOptions& opts = {});

/// Closed-form upper bound on the outage of the best-bottleneck-rate policy:
/// product over eligible relays of
///   1 - exp(-(1+d_si^a) s2 (2^((1+rho)L/(W phi_i)) - 1) / P_s)
///       * exp(-(1+d_ri^a) s2 (...) / P_r),
/// and exactly 1 when no relay is eligible.
double cors_outage_upper_bound(const SystemConfig& cfg);

/// Exact outage of the max-CPU policy: 1 when its relay cannot meet the
/// deadline, otherwise the two-hop tail probability at T = W phi / L.
double cpors_outage(const SystemConfig& cfg, const AnalyticOptions& opts = {});

/// Exact outage of the latency-best policy: product of per-relay two-hop
/// tails over the eligible set (ineligible relays contribute factor 1).
double lbrs_outage(const SystemConfig& cfg, const AnalyticOptions& opts = {});

enum class SaturatedHop { uplink, downlink };

/// Limiting outage when one hop's power grows without bound and its
/// transmission time vanishes. The latency-best and best-rate policies share
/// one limit expression by construction; the max-CPU policy keeps only its
/// chosen relay's factor.
double limit_outage(const SystemConfig& cfg, Scheme scheme, SaturatedHop hop);

/// High-SNR power law for the best-rate policy under P_s = P_r:
///   gamma^-|phi| * prod_{i in phi} (2^((1+rho)L/(W phi_i)) - 1)
///                  * (2 + d_si^a + d_ri^a) / (1 + d_si^a).
/// An empty eligible set gives 1.
double cors_asymptotic_outage(const SystemConfig& cfg, double gamma);

/// Analytic outage for one policy: exact values for latency-best and
/// max-CPU, the closed-form upper bound for best-rate.
double analytic_outage(const SystemConfig& cfg, Scheme scheme,
                       const AnalyticOptions& opts = {});

/// Least-squares slope of -log P_out against log gamma over a grid of
/// normalized SNRs, P_s = P_r swept jointly with geometry fixed.
struct DiversityFit {
  std::vector<double> gamma_grid;
  std::vector<double> log_outage;  // natural log of the outage at each gamma
  double slope = 0;
  double fit_residual = 0;  // RMS residual of the fit
  bool degenerate = false;  // outage pinned at 1, slope reported as 0
};

/// gamma is normalized as P_s / ((1 + d_s0^alpha) sigma^2) using relay 0's
/// uplink path loss; with uniform geometry this is the usual normalized SNR,
/// and the fitted slope is invariant to the normalization constant anyway.
DiversityFit diversity_order(const SystemConfig& cfg_template, Scheme scheme,
                             std::span<const double> gamma_grid,
                             const AnalyticOptions& opts = {});

}  // namespace relaysim

#endif  // RELAYSIM_ANALYTIC_HPP_
