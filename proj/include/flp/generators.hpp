#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "flp/instance.hpp"
#include "flp/rng.hpp"

namespace flp {

// Client-demand models. The truncated Gaussian draws Normal(mean, sd),
// rounds to the nearest integer and clamps into [lo, hi].
struct TruncatedGaussianModel {
  double mean = 2.5;
  double sd = 1.5;
  std::int64_t lo = 0;
  std::int64_t hi = 8;
};

struct ConstantModel {
  std::int64_t value = 1;  // b_avg
};

// Lower bound p on Pr[b_v >= 1].
struct PresenceProb {
  explicit PresenceProb(double p);
  double p;
};

// Zero with probability 1-p, else a draw from the demand model conditioned
// to be >= 1.
struct BernoulliPresenceModel {
  PresenceProb presence{1.0};
  std::variant<TruncatedGaussianModel, ConstantModel> demand;
};

using ClientModel =
    std::variant<TruncatedGaussianModel, ConstantModel, BernoulliPresenceModel>;

struct GeneratorConfig {
  std::int64_t n = 1000;   // expected total locations
  double gamma = 2.0;      // scaling parameter, >= 1
  double delta_gen = 0.2;  // cluster radius, >= 0
  ClientModel client_model = TruncatedGaussianModel{};
  double cost_lo = 0.1;
  double cost_hi = 0.3;
  std::uint64_t seed = 0;
  bool min_one = false;  // clamp sampled clients to >= 1

  void validate() const;
};

// The cluster process intensities: lambda_daughter = gamma^2 ln^2 n and
// lambda_centers = n / lambda_daughter, so E[total] = n.
struct MaternIntensities {
  double lambda_centers = 0.0;
  double lambda_daughter = 0.0;
};
MaternIntensities matern_intensities(const GeneratorConfig& cfg);

// Matérn cluster process point stage: centers ~ Poisson(lambda_centers)
// uniform on the unit square, daughters ~ Poisson(lambda_daughter) per center
// with radius uniform on [0, delta_gen] and angle uniform on [0, 2pi).
// The realized window is [-delta_gen, 1 + delta_gen]^2.
std::vector<Point2> matern_points(const GeneratorConfig& cfg, Rng& rng);

// Poisson process point stage: count ~ Poisson(n), points i.i.d. uniform on
// the unit square.
std::vector<Point2> poisson_points(const GeneratorConfig& cfg, Rng& rng);

std::vector<std::int64_t> sample_clients(std::int64_t count,
                                         const ClientModel& model, Rng& rng);

std::vector<double> sample_facility_costs(std::int64_t count, double lo,
                                          double hi, Rng& rng);

// Full instances. Empty point draws are retried up to 16 times, then a
// GenerationError is raised.
Instance generate_matern(const GeneratorConfig& cfg, Rng& rng);
Instance generate_poisson(const GeneratorConfig& cfg, Rng& rng);

enum class PointProcess { kMatern, kPoisson };
Instance generate(PointProcess process, const GeneratorConfig& cfg, Rng& rng);

// Per-location ball occupancy against the density assumption
// |B(v, delta)| >= gamma^2 ln^2 n. Advisory: solvers never require it.
struct DensityReport {
  double threshold = 0.0;               // gamma^2 ln^2 n
  std::vector<int> ball_sizes;          // |B(v, delta)|
  std::vector<bool> satisfied;          // ball_sizes[v] >= threshold
  std::int64_t satisfied_count = 0;
  double fraction = 0.0;
};

DensityReport density_check(const Instance& inst, double delta, double gamma);

}  // namespace flp
