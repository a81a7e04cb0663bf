#pragma once

#include <cstdint>
#include <vector>

#include "flp/rng.hpp"

namespace flp {

// Privacy budget epsilon and total failure probability alpha. Validated at
// construction: epsilon > 0, alpha in (0, 1).
struct PrivacyParams {
  PrivacyParams(double epsilon, double alpha);

  double epsilon;
  double alpha;
};

// Per-location perturbed client counts b'_v together with the budget spent.
struct NoisyCounts {
  std::vector<double> values;
  double epsilon_used = 0.0;
};

// One draw from Laplace(0, scale). Inverse CDF from a single uniform
// u in (-1/2, 1/2]: x = -scale * sign(u) * ln(1 - 2|u|).
double laplace_sample(double scale, Rng& rng);

// b'_v = b_v + Lap(1/epsilon), one draw per location in index order. The
// count query has L1 sensitivity 1, so the output is epsilon-LDP per
// location. Noisy values are not clamped here; negative counts are legal.
NoisyCounts perturb_counts(const std::vector<std::int64_t>& clients,
                           const PrivacyParams& params, Rng& rng);

// The capacity margin (2/eps) * sqrt(k) * ln(2n/alpha) for a facility with k
// connected locations out of n total. ln(2n/alpha) is the sum-of-Laplace
// tail threshold ln(2k/beta) evaluated at beta = k * alpha / n, so a union
// bound over facilities (their k values sum to n) caps the total failure
// probability at alpha.
double margin(std::int64_t k, const PrivacyParams& params, std::int64_t n);

// Monte Carlo estimate of Pr[|sum of k Laplace(scale) draws| > t] at
// t = 2 * scale * sqrt(k) * ln(2k/beta). The sum-of-Laplace tail bound says
// this is at most beta.
double laplace_sum_tail_check(std::int64_t k, double scale, double beta,
                              std::int64_t trials, Rng& rng);

}  // namespace flp
