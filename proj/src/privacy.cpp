#include "flp/privacy.hpp"

#include <cmath>
#include <string>

#include "flp/errors.hpp"

namespace flp {

PrivacyParams::PrivacyParams(double eps, double a) : epsilon(eps), alpha(a) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("epsilon must be finite and > 0");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("alpha must be in (0, 1)");
  }
}

double laplace_sample(double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("laplace_sample: scale must be finite and > 0");
  }
  double u01 = rng.next_double();
  if (u01 == 0.0) u01 = 0x1.0p-53;  // keep u strictly below +1/2
  const double u = 0.5 - u01;       // (-1/2, 1/2)
  const double sign = u >= 0.0 ? 1.0 : -1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(u));
}

NoisyCounts perturb_counts(const std::vector<std::int64_t>& clients,
                           const PrivacyParams& params, Rng& rng) {
  NoisyCounts out;
  out.epsilon_used = params.epsilon;
  out.values.reserve(clients.size());
  const double scale = 1.0 / params.epsilon;
  for (std::int64_t b : clients) {
    out.values.push_back(static_cast<double>(b) + laplace_sample(scale, rng));
  }
  return out;
}

double margin(std::int64_t k, const PrivacyParams& params, std::int64_t n) {
  if (k < 0) throw InvalidArgument("margin: k must be >= 0");
  if (n < 1) throw InvalidArgument("margin: n must be >= 1");
  return (2.0 / params.epsilon) * std::sqrt(static_cast<double>(k)) *
         std::log(2.0 * static_cast<double>(n) / params.alpha);
}

double laplace_sum_tail_check(std::int64_t k, double scale, double beta,
                              std::int64_t trials, Rng& rng) {
  if (k < 1) throw InvalidArgument("laplace_sum_tail_check: k must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("laplace_sum_tail_check: beta must be in (0, 1)");
  }
  if (trials < 1) {
    throw InvalidArgument("laplace_sum_tail_check: trials must be >= 1");
  }
  const double t = 2.0 * scale * std::sqrt(static_cast<double>(k)) *
                   std::log(2.0 * static_cast<double>(k) / beta);
  std::int64_t exceeded = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < k; ++i) sum += laplace_sample(scale, rng);
    if (std::abs(sum) > t) ++exceeded;
  }
  return static_cast<double>(exceeded) / static_cast<double>(trials);
}

}  // namespace flp
