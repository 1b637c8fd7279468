#include "relaysim/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relaysim {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void TaskSpec::validate() const {
  require(std::isfinite(input_bits) && input_bits > 0,
          "TaskSpec: input_bits must be positive");
  require(std::isfinite(cycles_per_bit) && cycles_per_bit >= 0,
          "TaskSpec: cycles_per_bit must be non-negative");
  require(std::isfinite(compute_ratio) && compute_ratio >= 0,
          "TaskSpec: compute_ratio must be non-negative");
}

void RelayNode::validate() const {
  require(std::isfinite(cpu_freq) && cpu_freq > 0,
          "RelayNode: cpu_freq must be positive");
  require(std::isfinite(dist_src) && dist_src >= 0,
          "RelayNode: dist_src must be non-negative");
  require(std::isfinite(dist_dst) && dist_dst >= 0,
          "RelayNode: dist_dst must be non-negative");
}

void SystemConfig::validate() const {
  require(std::isfinite(src_power) && src_power > 0,
          "SystemConfig: src_power must be positive");
  require(std::isfinite(relay_power) && relay_power > 0,
          "SystemConfig: relay_power must be positive");
  require(std::isfinite(noise) && noise > 0,
          "SystemConfig: noise must be positive");
  require(std::isfinite(bandwidth) && bandwidth > 0,
          "SystemConfig: bandwidth must be positive");
  require(std::isfinite(pathloss_exp) && pathloss_exp > 2,
          "SystemConfig: pathloss_exp must exceed 2");
  require(std::isfinite(deadline) && deadline > 0,
          "SystemConfig: deadline must be positive");
  require(!relays.empty(), "SystemConfig: at least one relay required");
  task.validate();
  for (const RelayNode& r : relays) r.validate();
}

double pathloss_gain(double dist, double alpha) {
  if (!(dist >= 0) || !std::isfinite(dist))
    throw std::invalid_argument("pathloss_gain: distance must be >= 0");
  if (!(alpha > 2) || !std::isfinite(alpha))
    throw std::invalid_argument("pathloss_gain: exponent must exceed 2");
  return 1.0 / (1.0 + std::pow(dist, alpha));
}

double link_rate(double power, double fading_power, double dist,
                 const SystemConfig& cfg) {
  const double snr =
      power * fading_power * pathloss_gain(dist, cfg.pathloss_exp) / cfg.noise;
  return cfg.bandwidth * std::log2(1.0 + snr);
}

double compute_time(const TaskSpec& task, const RelayNode& relay) {
  return task.input_bits * task.cycles_per_bit / relay.cpu_freq;
}

LinkMetrics total_delay(const SystemConfig& cfg, std::size_t index, double h2,
                        double g2) {
  const RelayNode& relay = cfg.relays.at(index);
  LinkMetrics m;
  const double up_gain = pathloss_gain(relay.dist_src, cfg.pathloss_exp);
  const double down_gain = pathloss_gain(relay.dist_dst, cfg.pathloss_exp);
  // Coefficient-first evaluation keeps this bit-identical with the
  // precomputed trial kernel.
  m.snr_up = cfg.src_power * up_gain / cfg.noise * h2;
  m.snr_down = cfg.relay_power * down_gain / cfg.noise * g2;
  m.rate_up = cfg.bandwidth * std::log2(1.0 + m.snr_up);
  m.rate_down = cfg.bandwidth * std::log2(1.0 + m.snr_down);
  m.t_comp = compute_time(cfg.task, relay);
  m.t_up = m.rate_up > 0 ? cfg.task.input_bits / m.rate_up : kInfiniteDelay;
  const double out_bits = cfg.task.compute_ratio * cfg.task.input_bits;
  if (out_bits == 0) {
    m.t_down = 0.0;
  } else {
    m.t_down = m.rate_down > 0 ? out_bits / m.rate_down : kInfiniteDelay;
  }
  m.t_total = m.t_up + m.t_comp + m.t_down;
  return m;
}

EligibilityView eligibility(const SystemConfig& cfg) {
  EligibilityView view;
  view.phi_margins.reserve(cfg.n_relays());
  for (std::size_t i = 0; i < cfg.n_relays(); ++i) {
    const double phi = cfg.deadline - compute_time(cfg.task, cfg.relays[i]);
    view.phi_margins.push_back(phi);
    if (phi > 0.0) view.phi_set.push_back(i);
  }
  return view;
}

}  // namespace relaysim
