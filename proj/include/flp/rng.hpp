#pragma once

#include <cstdint>

namespace flp {

// Deterministic random engine (xoshiro256++) with the sampling routines the
// harness needs. std:: distributions are implementation-defined, so every
// distribution is implemented here to keep streams bit-reproducible across
// platforms and toolchains.
//
// Poisson sampling: Knuth multiplicative inversion for lambda < 30, Hörmann's
// PTRS transformed rejection for lambda >= 30.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_double();

  // Uniform on [lo, hi].
  double uniform(double lo, double hi);

  // Uniform on (-1/2, 1/2]; the inverse-CDF Laplace input.
  double signed_unit();

  // Box-Muller; two uniforms per draw, no cached spare.
  double normal(double mean, double stddev);

  std::int64_t poisson(double lambda);

 private:
  std::uint64_t state_[4];
};

// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x);

// Splittable counter-based seed derivation: independent streams for
// (master, stream, index) tuples. Grid points and trials can be expanded in
// any parallel order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

}  // namespace flp
