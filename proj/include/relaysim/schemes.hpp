#ifndef RELAYSIM_SCHEMES_HPP_
#define RELAYSIM_SCHEMES_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/model.hpp"

namespace relaysim {

enum class Scheme { lbrs, cors, cpors };

const char* to_string(Scheme s);

/// Decision of one policy on one channel realization. realized_delay is the
/// end-to-end delay of the chosen relay under that realization (+infinity
/// when its links are dead). Ties are broken by lowest index everywhere.
struct SelectionOutcome {
  std::size_t chosen_index = 0;
  Scheme scheme = Scheme::lbrs;
  double realized_delay = kInfiniteDelay;
};

struct PerDrawOutcomes {
  SelectionOutcome lbrs;
  SelectionOutcome cors;
  SelectionOutcome cpors;
};

/// Per-relay constants that do not change between trials. Building this once
/// outside the trial loop removes all pow() calls from the hot path.
struct RelayPrecomp {
  std::vector<double> snr_up_coef;    // P_s / ((1+d_si^alpha) sigma^2)
  std::vector<double> snr_down_coef;  // P_r / ((1+d_ri^alpha) sigma^2)
  std::vector<double> t_comp;
  double bandwidth = 0;
  double input_bits = 0;
  double output_bits = 0;  // rho * L
  double deadline = 0;
  std::size_t cpors_idx = 0;

  static RelayPrecomp make(const SystemConfig& cfg);
  std::size_t size() const { return t_comp.size(); }
};

/// Index of the relay with the largest CPU frequency. Channel-independent,
/// so callers may hoist it out of any trial loop.
std::size_t cpors_index(const SystemConfig& cfg);

/// Evaluates all three policies on one draw in a single pass over relays.
PerDrawOutcomes select_all(const RelayPrecomp& pre, std::span<const double> h2,
                           std::span<const double> g2);

/// Picks the relay with the best bottleneck rate, max_i min(rate_up, rate_down),
/// over all relays; computing ability is deliberately not consulted.
SelectionOutcome select_cors(const SystemConfig& cfg, const ChannelDraw& draw);

/// Picks the relay with the largest CPU frequency regardless of the channel.
SelectionOutcome select_cpors(const SystemConfig& cfg, const ChannelDraw& draw);

/// Picks the relay with the smallest end-to-end delay; optimal per draw.
SelectionOutcome select_lbrs(const SystemConfig& cfg, const ChannelDraw& draw);

}  // namespace relaysim

#endif  // RELAYSIM_SCHEMES_HPP_
