#include "relaysim/schemes.hpp"

#include <cmath>

namespace relaysim {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::lbrs:
      return "lbrs";
    case Scheme::cors:
      return "cors";
    case Scheme::cpors:
      return "cpors";
  }
  return "?";
}

std::size_t cpors_index(const SystemConfig& cfg) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cfg.n_relays(); ++i) {
    if (cfg.relays[i].cpu_freq > cfg.relays[best].cpu_freq) best = i;
  }
  return best;
}

RelayPrecomp RelayPrecomp::make(const SystemConfig& cfg) {
  RelayPrecomp pre;
  const std::size_t n = cfg.n_relays();
  pre.snr_up_coef.reserve(n);
  pre.snr_down_coef.reserve(n);
  pre.t_comp.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RelayNode& r = cfg.relays[i];
    pre.snr_up_coef.push_back(
        cfg.src_power * pathloss_gain(r.dist_src, cfg.pathloss_exp) /
        cfg.noise);
    pre.snr_down_coef.push_back(
        cfg.relay_power * pathloss_gain(r.dist_dst, cfg.pathloss_exp) /
        cfg.noise);
    pre.t_comp.push_back(compute_time(cfg.task, r));
  }
  pre.bandwidth = cfg.bandwidth;
  pre.input_bits = cfg.task.input_bits;
  pre.output_bits = cfg.task.compute_ratio * cfg.task.input_bits;
  pre.deadline = cfg.deadline;
  pre.cpors_idx = cpors_index(cfg);
  return pre;
}

PerDrawOutcomes select_all(const RelayPrecomp& pre, std::span<const double> h2,
                           std::span<const double> g2) {
  PerDrawOutcomes out;
  out.lbrs.scheme = Scheme::lbrs;
  out.cors.scheme = Scheme::cors;
  out.cpors.scheme = Scheme::cpors;

  double best_delay = kInfiniteDelay;
  double best_min_rate = -1.0;
  // Strict comparisons keep the lowest index on ties.
  for (std::size_t i = 0; i < pre.size(); ++i) {
    const double rate_up =
        pre.bandwidth * std::log2(1.0 + pre.snr_up_coef[i] * h2[i]);
    const double rate_down =
        pre.bandwidth * std::log2(1.0 + pre.snr_down_coef[i] * g2[i]);
    const double t_up =
        rate_up > 0 ? pre.input_bits / rate_up : kInfiniteDelay;
    double t_down = 0.0;
    if (pre.output_bits > 0) {
      t_down = rate_down > 0 ? pre.output_bits / rate_down : kInfiniteDelay;
    }
    const double delay = t_up + pre.t_comp[i] + t_down;

    if (delay < best_delay) {
      best_delay = delay;
      out.lbrs.chosen_index = i;
    }
    const double min_rate = rate_up < rate_down ? rate_up : rate_down;
    if (min_rate > best_min_rate) {
      best_min_rate = min_rate;
      out.cors.chosen_index = i;
      out.cors.realized_delay = delay;
    }
    if (i == pre.cpors_idx) out.cpors.realized_delay = delay;
  }
  out.lbrs.realized_delay = best_delay;
  out.cpors.chosen_index = pre.cpors_idx;
  return out;
}

SelectionOutcome select_cors(const SystemConfig& cfg, const ChannelDraw& draw) {
  return select_all(RelayPrecomp::make(cfg), draw.h2, draw.g2).cors;
}

SelectionOutcome select_cpors(const SystemConfig& cfg,
                              const ChannelDraw& draw) {
  return select_all(RelayPrecomp::make(cfg), draw.h2, draw.g2).cpors;
}

SelectionOutcome select_lbrs(const SystemConfig& cfg, const ChannelDraw& draw) {
  return select_all(RelayPrecomp::make(cfg), draw.h2, draw.g2).lbrs;
}

}  // namespace relaysim
