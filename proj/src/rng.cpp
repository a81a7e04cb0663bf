#include "flp/rng.hpp"

#include <cmath>
#include <numbers>

#include "flp/errors.hpp"

namespace flp {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  std::uint64_t h = mix64(master + kGolden);
  h = mix64(h ^ (stream + kGolden));
  h = mix64(h ^ (index + kGolden));
  return h;
}

Rng::Rng(std::uint64_t seed) {
  // SplitMix64 expansion of the seed into the xoshiro256++ state.
  std::uint64_t s = seed;
  for (auto& word : state_) {
    s += kGolden;
    word = mix64(s);
  }
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double Rng::signed_unit() {
  return 0.5 - next_double();
}

double Rng::normal(double mean, double stddev) {
  // 1 - U in (0, 1] keeps the log argument positive.
  const double u1 = 1.0 - next_double();
  const double u2 = next_double();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t Rng::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("poisson: lambda must be finite and >= 0");
  }
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) {
    // Knuth inversion: count uniforms until their product drops below e^-l.
    const double limit = std::exp(-lambda);
    std::int64_t k = 0;
    double prod = next_double();
    while (prod > limit) {
      ++k;
      prod *= next_double();
    }
    return k;
  }
  // PTRS (Hörmann 1993), exact for lambda >= 10; used from 30 up.
  const double log_lambda = std::log(lambda);
  const double b = 0.931 + 2.53 * std::sqrt(lambda);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = next_double() - 0.5;
    double v = next_double();
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_lambda - lambda - std::lgamma(k + 1.0)) {
      return static_cast<std::int64_t>(k);
    }
  }
}

}  // namespace flp
