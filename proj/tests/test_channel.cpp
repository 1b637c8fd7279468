#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "relaysim/channel.hpp"

using namespace relaysim;

TEST_SUITE_BEGIN("channel");

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors from the Random123 distribution (kat_vectors).
  const auto zero = rng::philox4x32(0, {0, 0, 0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = rng::philox4x32(
      0xffffffffffffffffull, {0xffffffffu, 0xffffffffu, 0xffffffffu,
                              0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const auto pi = rng::philox4x32(
      (0x299f31d0ull << 32) | 0xa4093822ull,
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("identical coordinates give identical draws") {
  const SeedSpec seed{0xDEADBEEFull, 17};
  const ChannelDraw a = draw(seed, 4);
  const ChannelDraw b = draw(seed, 4);
  CHECK(a.h2 == b.h2);
  CHECK(a.g2 == b.g2);

  // Extending the relay count must not perturb existing relays.
  const ChannelDraw wide = draw(seed, 6);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(wide.h2[i] == a.h2[i]);
    CHECK(wide.g2[i] == a.g2[i]);
  }
}

TEST_CASE("distinct streams and seeds give distinct draws") {
  const ChannelDraw a = draw({1, 0}, 2);
  const ChannelDraw b = draw({1, 1}, 2);
  const ChannelDraw c = draw({2, 0}, 2);
  CHECK(a.h2 != b.h2);
  CHECK(a.h2 != c.h2);
}

TEST_CASE("all draws are finite and strictly positive") {
  for (std::uint64_t t = 0; t < 20000; ++t) {
    const ChannelDraw d = draw({42, t}, 2);
    for (const double x : d.h2) {
      CHECK(std::isfinite(x));
      CHECK(x > 0);
    }
    for (const double x : d.g2) {
      CHECK(std::isfinite(x));
      CHECK(x > 0);
    }
  }
}

TEST_CASE("empirical mean and median match Exp(1)") {
  const std::uint64_t n = 1'000'000;
  double sum = 0;
  std::uint64_t above_ln2 = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    const double x =
        rng::exponential(7, t, 0, rng::kDomainChannel);
    sum += x;
    if (x > 0.6931471805599453) ++above_ln2;
  }
  const double mean = sum / static_cast<double>(n);
  CHECK(mean == doctest::Approx(1.0).epsilon(0.005));
  const double frac = static_cast<double>(above_ln2) / static_cast<double>(n);
  CHECK(frac == doctest::Approx(0.5).epsilon(0.003));
}

TEST_CASE("Kolmogorov-Smirnov against the Exp(1) CDF") {
  const std::size_t n = 100'000;
  std::vector<double> xs(n);
  for (std::size_t t = 0; t < n; ++t) {
    xs[t] = rng::exponential(99, t, 1, rng::kDomainChannel);
  }
  std::sort(xs.begin(), xs.end());
  double d_stat = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(-xs[i]);
    const double hi = static_cast<double>(i + 1) / n - cdf;
    const double lo = cdf - static_cast<double>(i) / n;
    d_stat = std::max({d_stat, hi, lo});
  }
  // 1% critical value of the two-sided KS statistic, asymptotic form.
  const double critical = 1.62762 / std::sqrt(static_cast<double>(n));
  CHECK(d_stat < critical);
}

namespace {

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("no cross-correlation between gains or adjacent streams") {
  const std::size_t n = 1'000'000;
  std::vector<double> h0(n), g0(n), h1(n), next_h0(n);
  for (std::size_t t = 0; t < n; ++t) {
    const ChannelDraw d = draw({5, t}, 2);
    h0[t] = d.h2[0];
    g0[t] = d.g2[0];
    h1[t] = d.h2[1];
    const ChannelDraw dn = draw({5, t + 1}, 2);
    next_h0[t] = dn.h2[0];
  }
  CHECK(std::abs(pearson(h0, g0)) < 0.01);
  CHECK(std::abs(pearson(h0, h1)) < 0.01);
  CHECK(std::abs(pearson(h0, next_h0)) < 0.01);
}

TEST_SUITE_END();
