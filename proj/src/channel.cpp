#include "relaysim/channel.hpp"

#include <cmath>

namespace relaysim {

namespace rng {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;
constexpr std::uint32_t kBump1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> philox4x32(
    std::uint64_t key, const std::array<std::uint32_t, 4>& counter) {
  std::uint32_t k0 = static_cast<std::uint32_t>(key);
  std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
  std::array<std::uint32_t, 4> v = counter;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * v[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * v[2];
    v = {static_cast<std::uint32_t>(p1 >> 32) ^ v[1] ^ k0,
         static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ v[3] ^ k1,
         static_cast<std::uint32_t>(p0)};
    k0 += kBump0;
    k1 += kBump1;
  }
  return v;
}

double uniform_open(std::uint64_t key, std::uint64_t stream,
                    std::uint32_t index, std::uint32_t domain) {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32), index, domain};
  const std::array<std::uint32_t, 4> out = philox4x32(key, ctr);
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  // 53 high bits, centered in the cell: strictly inside (0,1).
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double exponential(std::uint64_t key, std::uint64_t stream,
                   std::uint32_t index, std::uint32_t domain) {
  return -std::log(uniform_open(key, stream, index, domain));
}

}  // namespace rng

ChannelDraw draw(const SeedSpec& seed, std::size_t n_relays) {
  ChannelDraw d;
  d.h2.resize(n_relays);
  d.g2.resize(n_relays);
  draw_into(seed, n_relays, d.h2, d.g2);
  return d;
}

void draw_into(const SeedSpec& seed, std::size_t n_relays,
               std::span<double> h2, std::span<double> g2) {
  for (std::size_t i = 0; i < n_relays; ++i) {
    const std::uint32_t base = static_cast<std::uint32_t>(2 * i);
    h2[i] = rng::exponential(seed.master_seed, seed.stream_id, base,
                             rng::kDomainChannel);
    g2[i] = rng::exponential(seed.master_seed, seed.stream_id, base + 1,
                             rng::kDomainChannel);
  }
}

}  // namespace relaysim
