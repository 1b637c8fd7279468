#ifndef RELAYSIM_CHANNEL_HPP_
#define RELAYSIM_CHANNEL_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace relaysim {

/// Addresses one substream of the master random sequence. Every variate is a
/// pure function of (master_seed, stream_id, variate index), so the same
/// coordinates give the same number on every platform, at every thread count
/// and in any evaluation order. Monte Carlo trials use stream_id = trial
/// index; parallel workers never share state.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// One realization of all fading power gains: |h_i|^2 uplink, |g_i|^2
/// downlink, both marginally Exp(1).
struct ChannelDraw {
  std::vector<double> h2;
  std::vector<double> g2;
};

namespace rng {

/// Domain tags keep unrelated consumers of one master seed on disjoint
/// counter ranges.
inline constexpr std::uint32_t kDomainChannel = 0;
inline constexpr std::uint32_t kDomainCpuFreq = 1;

/// Philox4x32-10 block function (counter-based, reference round constants).
std::array<std::uint32_t, 4> philox4x32(
    std::uint64_t key, const std::array<std::uint32_t, 4>& counter);

/// Uniform on the open interval (0,1); never returns 0 or 1, so -log(u) is
/// always finite.
double uniform_open(std::uint64_t key, std::uint64_t stream,
                    std::uint32_t index, std::uint32_t domain);

/// Unit-rate exponential variate by inverse CDF.
double exponential(std::uint64_t key, std::uint64_t stream,
                   std::uint32_t index, std::uint32_t domain);

}  // namespace rng

/// Draws 2*n_relays independent Exp(1) fading powers for one trial. Variate
/// indices are laid out per relay (2i uplink, 2i+1 downlink), so extending
/// the relay list never perturbs the draws of existing relays.
ChannelDraw draw(const SeedSpec& seed, std::size_t n_relays);

/// Allocation-free variant for hot loops. Spans must hold n_relays entries.
void draw_into(const SeedSpec& seed, std::size_t n_relays,
               std::span<double> h2, std::span<double> g2);

}  // namespace relaysim

#endif  // RELAYSIM_CHANNEL_HPP_
