#ifndef RELAYSIM_MODEL_HPP_
#define RELAYSIM_MODEL_HPP_

#include <cstddef>
#include <limits>
#include <vector>

namespace relaysim {

inline constexpr double kInfiniteDelay = std::numeric_limits<double>::infinity();

/// A computation task: input size, CPU work per bit, and the ratio of the
/// output payload to the input size. compute_ratio = 0 means nothing has to
/// be sent back after processing.
struct TaskSpec {
  double input_bits = 50e6;     // bits
  double cycles_per_bit = 10.0; // CPU cycles per input bit
  double compute_ratio = 0.5;   // output bits / input bits

  void validate() const;
};

/// One relay: its CPU clock and its distances to the two endpoints.
struct RelayNode {
  double cpu_freq = 25e9; // cycles/s
  double dist_src = 1.0;  // m, source -> relay
  double dist_dst = 1.0;  // m, relay -> destination

  void validate() const;
};

/// Full operating point of the two-hop network. Powers and noise are linear
/// (watts); dB conversions belong to the configuration layer, not here.
struct SystemConfig {
  double src_power = 316.22776601683796; // P_s, watts (stock: 25 dB over noise)
  double relay_power = 100.0;            // P_r, watts (stock: 20 dB over noise)
  double noise = 1.0;                    // sigma^2, watts
  double bandwidth = 100e6;              // W, Hz per hop
  double pathloss_exp = 3.0;             // alpha, must exceed 2
  double deadline = 0.2;                 // D_max, seconds
  std::vector<RelayNode> relays;
  TaskSpec task;

  std::size_t n_relays() const { return relays.size(); }
  void validate() const;
};

/// Everything computed for one relay under one channel realization.
/// Hop times are +infinity when the corresponding rate is zero; they are
/// data, not errors, so outage counting can consume them directly.
struct LinkMetrics {
  double snr_up = 0;
  double snr_down = 0;
  double rate_up = 0;  // bits/s
  double rate_down = 0;
  double t_up = 0;     // seconds
  double t_comp = 0;
  double t_down = 0;
  double t_total = 0;
};

/// Per-relay slack between the deadline and the pure computation time,
/// plus the set of relays that can meet the deadline at all. Membership is
/// strict: a relay whose computation exactly exhausts the deadline is out.
struct EligibilityView {
  std::vector<double> phi_margins;   // deadline - L*K/f, per relay
  std::vector<std::size_t> phi_set;  // indices with phi_margins[i] > 0

  bool eligible(std::size_t i) const { return phi_margins[i] > 0.0; }
};

/// Distance-driven power gain 1/(1 + d^alpha), in (0, 1]. Regular at d = 0.
/// Throws std::invalid_argument for d < 0 or alpha <= 2.
double pathloss_gain(double dist, double alpha);

/// Shannon rate of one hop: W * log2(1 + P * fading / ((1 + d^alpha) * sigma^2)).
/// A dead channel (fading_power == 0) yields rate 0.
double link_rate(double power, double fading_power, double dist,
                 const SystemConfig& cfg);

/// L * K / f.
double compute_time(const TaskSpec& task, const RelayNode& relay);

/// End-to-end delay through relay `index` given the two fading powers of its
/// hops: upload of L bits, local computation, download of rho*L bits.
/// compute_ratio == 0 forces t_down = 0 even if the downlink is dead.
LinkMetrics total_delay(const SystemConfig& cfg, std::size_t index, double h2,
                        double g2);

EligibilityView eligibility(const SystemConfig& cfg);

}  // namespace relaysim

#endif  // RELAYSIM_MODEL_HPP_
