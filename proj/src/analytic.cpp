#include "relaysim/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relaysim/quadrature.hpp"

namespace relaysim {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Exponents beyond this make 2^e overflow; the surviving probability mass
// there is below double underflow anyway.
constexpr double kMaxExp2 = 1024.0;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

[[noreturn]] void fail_quadrature(const char* where) {
  throw QuadratureError(std::string(where) +
                        ": integral did not reach tolerance");
}

}  // namespace

double HopTimeDistribution::cdf(double t) const {
  if (!(t > 0)) return 0.0;
  if (payload_ratio == 0) return 1.0;  // nothing to send: time is 0 a.s.
  const double e = payload_ratio / t;
  if (e > kMaxExp2) return 0.0;
  return std::exp(-scale_c * (std::exp2(e) - 1.0));
}

double HopTimeDistribution::pdf(double t) const {
  if (!(t > 0) || payload_ratio == 0) return 0.0;
  const double e = payload_ratio / t;
  if (e > kMaxExp2) return 0.0;
  const double pow2 = std::exp2(e);
  const double log_f = std::log(scale_c * payload_ratio * kLn2) + e * kLn2 -
                       2.0 * std::log(t) - scale_c * (pow2 - 1.0);
  if (log_f < -745.0) return 0.0;
  return std::exp(log_f);
}

HopTimeDistribution uplink_distribution(const SystemConfig& cfg,
                                        std::size_t index) {
  const RelayNode& r = cfg.relays.at(index);
  const double gain = pathloss_gain(r.dist_src, cfg.pathloss_exp);
  return {cfg.noise / (cfg.src_power * gain), 1.0};
}

HopTimeDistribution downlink_distribution(const SystemConfig& cfg,
                                          std::size_t index) {
  const RelayNode& r = cfg.relays.at(index);
  const double gain = pathloss_gain(r.dist_dst, cfg.pathloss_exp);
  return {cfg.noise / (cfg.relay_power * gain), cfg.task.compute_ratio};
}

double hop_time_cdf(const HopTimeDistribution& dist, double t) {
  return dist.cdf(t);
}

namespace {

// The pdf bodies of both hop times sit within a few units of the origin;
// splitting a wide interval there (and symmetrically at the far end) keeps
// the first adaptive panels from sampling straight past the mass.
constexpr double kBodyCut = 16.0;

double integrate_with_cuts(const std::function<double(double)>& f, double b,
                           double tol, const char* where) {
  double cuts[4];
  std::size_t n_cuts;
  if (b > 2 * kBodyCut) {
    cuts[0] = 0.0;
    cuts[1] = kBodyCut;
    cuts[2] = b - kBodyCut;
    cuts[3] = b;
    n_cuts = 4;
  } else {
    cuts[0] = 0.0;
    cuts[1] = 0.5 * b;
    cuts[2] = b;
    n_cuts = 3;
  }
  double total = 0;
  for (std::size_t i = 0; i + 1 < n_cuts; ++i) {
    const QuadResult q = integrate(f, cuts[i], cuts[i + 1], tol);
    if (!q.converged) fail_quadrature(where);
    total += q.value;
  }
  return total;
}

}  // namespace

double sum_tail_probability(const HopTimeDistribution& up,
                            const HopTimeDistribution& down, double threshold,
                            const AnalyticOptions& opts) {
  if (!std::isfinite(threshold))
    throw std::invalid_argument("sum_tail_probability: threshold not finite");
  if (threshold <= 0) return 1.0;
  auto integrand = [&up, &down, threshold](double y) {
    const double fy = up.pdf(y);
    if (fy == 0.0) return 0.0;
    return fy * down.cdf(threshold - y);
  };
  return clamp01(1.0 - integrate_with_cuts(integrand, threshold,
                                           opts.inner_tol,
                                           "sum_tail_probability"));
}

// The requested tolerance tightens like 1/z^2 to match the density's own
// decay; the tail integral over [T, inf) multiplies every pointwise error
// by the substitution Jacobian, so a flat tolerance would accumulate a
// visible bias across the semi-infinite domain.
double sum_time_pdf(const HopTimeDistribution& up,
                    const HopTimeDistribution& down, double z, double tol) {
  if (!(z > 0)) return 0.0;
  auto integrand = [&up, &down, z](double x) {
    const double fx = down.pdf(x);
    if (fx == 0.0) return 0.0;
    return fx * up.pdf(z - x);
  };
  return integrate_with_cuts(integrand, z, tol / (1.0 + z * z),
                             "sum_time_pdf");
}

double sum_tail_probability_nested(const HopTimeDistribution& up,
                                   const HopTimeDistribution& down,
                                   double threshold,
                                   const AnalyticOptions& opts) {
  if (!std::isfinite(threshold))
    throw std::invalid_argument(
        "sum_tail_probability_nested: threshold not finite");
  const double from = std::max(threshold, 0.0);
  // A zero-payload hop has no density; the sum reduces to the other hop.
  if (down.payload_ratio == 0) {
    auto f = [&up](double t) { return up.pdf(t); };
    const QuadResult q = integrate_semi_infinite(f, from, opts.outer_tol);
    if (!q.converged) fail_quadrature("sum_tail_probability_nested");
    return clamp01(q.value);
  }
  auto f = [&up, &down, &opts](double z) {
    return sum_time_pdf(up, down, z, opts.inner_tol);
  };
  const QuadResult q = integrate_semi_infinite(f, from, opts.outer_tol);
  if (!q.converged) fail_quadrature("sum_tail_probability_nested");
  return clamp01(q.value);
}

double cors_outage_upper_bound(const SystemConfig& cfg) {
  cfg.validate();
  const EligibilityView elig = eligibility(cfg);
  if (elig.phi_set.empty()) return 1.0;
  const double total_bits =
      cfg.task.input_bits * (1.0 + cfg.task.compute_ratio);
  double product = 1.0;
  for (const std::size_t i : elig.phi_set) {
    const double phi = elig.phi_margins[i];
    const double snr_thresh =
        std::exp2(total_bits / (cfg.bandwidth * phi)) - 1.0;
    const HopTimeDistribution upd = uplink_distribution(cfg, i);
    const HopTimeDistribution dnd = downlink_distribution(cfg, i);
    // 1 - exp(-(c_up + c_down) * (2^x - 1)), via expm1 for high-SNR accuracy.
    product *= -std::expm1(-(upd.scale_c + dnd.scale_c) * snr_thresh);
  }
  return clamp01(product);
}

double cpors_outage(const SystemConfig& cfg, const AnalyticOptions& opts) {
  cfg.validate();
  const std::size_t best = cpors_index(cfg);
  const double phi = cfg.deadline - compute_time(cfg.task, cfg.relays[best]);
  if (phi <= 0) return 1.0;
  const double threshold = cfg.bandwidth * phi / cfg.task.input_bits;
  return sum_tail_probability(uplink_distribution(cfg, best),
                              downlink_distribution(cfg, best), threshold,
                              opts);
}

double lbrs_outage(const SystemConfig& cfg, const AnalyticOptions& opts) {
  cfg.validate();
  const EligibilityView elig = eligibility(cfg);
  if (elig.phi_set.empty()) return 1.0;
  double product = 1.0;
  for (const std::size_t i : elig.phi_set) {
    const double threshold =
        cfg.bandwidth * elig.phi_margins[i] / cfg.task.input_bits;
    product *= sum_tail_probability(uplink_distribution(cfg, i),
                                    downlink_distribution(cfg, i), threshold,
                                    opts);
  }
  return clamp01(product);
}

namespace {

double single_hop_outage_factor(const HopTimeDistribution& hop,
                                double bits_over_w_phi) {
  const double snr_thresh = std::exp2(bits_over_w_phi) - 1.0;
  return -std::expm1(-hop.scale_c * snr_thresh);
}

}  // namespace

double limit_outage(const SystemConfig& cfg, Scheme scheme, SaturatedHop hop) {
  cfg.validate();
  const double payload = hop == SaturatedHop::uplink
                             ? cfg.task.compute_ratio * cfg.task.input_bits
                             : cfg.task.input_bits;
  auto factor = [&](std::size_t i, double phi) {
    const HopTimeDistribution dist = hop == SaturatedHop::uplink
                                         ? downlink_distribution(cfg, i)
                                         : uplink_distribution(cfg, i);
    return single_hop_outage_factor(dist, payload / (cfg.bandwidth * phi));
  };

  if (scheme == Scheme::cpors) {
    const std::size_t best = cpors_index(cfg);
    const double phi = cfg.deadline - compute_time(cfg.task, cfg.relays[best]);
    if (phi <= 0) return 1.0;
    return clamp01(factor(best, phi));
  }

  // Latency-best and best-rate share one limit expression.
  const EligibilityView elig = eligibility(cfg);
  if (elig.phi_set.empty()) return 1.0;
  double product = 1.0;
  for (const std::size_t i : elig.phi_set) {
    product *= factor(i, elig.phi_margins[i]);
  }
  return clamp01(product);
}

double cors_asymptotic_outage(const SystemConfig& cfg, double gamma) {
  cfg.validate();
  if (!(gamma > 0))
    throw std::invalid_argument("cors_asymptotic_outage: gamma must be > 0");
  const EligibilityView elig = eligibility(cfg);
  if (elig.phi_set.empty()) return 1.0;
  const double total_bits =
      cfg.task.input_bits * (1.0 + cfg.task.compute_ratio);
  double product = 1.0;
  for (const std::size_t i : elig.phi_set) {
    const double phi = elig.phi_margins[i];
    const double snr_thresh =
        std::exp2(total_bits / (cfg.bandwidth * phi)) - 1.0;
    const double ds = std::pow(cfg.relays[i].dist_src, cfg.pathloss_exp);
    const double dr = std::pow(cfg.relays[i].dist_dst, cfg.pathloss_exp);
    product *= snr_thresh * (2.0 + ds + dr) / (1.0 + ds);
  }
  return product / std::pow(gamma, static_cast<double>(elig.phi_set.size()));
}

double analytic_outage(const SystemConfig& cfg, Scheme scheme,
                       const AnalyticOptions& opts) {
  switch (scheme) {
    case Scheme::lbrs:
      return lbrs_outage(cfg, opts);
    case Scheme::cpors:
      return cpors_outage(cfg, opts);
    case Scheme::cors:
      return cors_outage_upper_bound(cfg);
  }
  throw std::invalid_argument("analytic_outage: unknown scheme");
}

DiversityFit diversity_order(const SystemConfig& cfg_template, Scheme scheme,
                             std::span<const double> gamma_grid,
                             const AnalyticOptions& opts) {
  cfg_template.validate();
  if (gamma_grid.size() < 4)
    throw std::invalid_argument("diversity_order: need >= 4 grid points");
  for (std::size_t i = 1; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] > gamma_grid[i - 1]))
      throw std::invalid_argument(
          "diversity_order: gamma grid must be strictly increasing");
  }

  const double norm =
      cfg_template.noise /
      pathloss_gain(cfg_template.relays[0].dist_src,
                    cfg_template.pathloss_exp);

  DiversityFit fit;
  fit.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
  fit.log_outage.reserve(gamma_grid.size());
  bool pinned = false;
  for (const double gamma : gamma_grid) {
    SystemConfig cfg = cfg_template;
    cfg.src_power = gamma * norm;
    cfg.relay_power = gamma * norm;
    const double p = analytic_outage(cfg, scheme, opts);
    if (p >= 1.0) pinned = true;
    fit.log_outage.push_back(std::log(p));
  }

  if (pinned) {
    // Outage stuck at 1 somewhere on the grid: no decay to fit.
    fit.slope = 0;
    fit.fit_residual = 0;
    fit.degenerate = true;
    return fit;
  }

  const std::size_t n = gamma_grid.size();
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += std::log(gamma_grid[i]);
    mean_y += -fit.log_outage[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(gamma_grid[i]) - mean_x;
    const double dy = -fit.log_outage[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  fit.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(gamma_grid[i]) - mean_x;
    const double resid = (-fit.log_outage[i] - mean_y) - fit.slope * dx;
    ss += resid * resid;
  }
  fit.fit_residual = std::sqrt(ss / static_cast<double>(n));
  return fit;
}

}  // namespace relaysim
