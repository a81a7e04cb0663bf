#include "flp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flp/errors.hpp"

namespace flp {

namespace {

constexpr int kEmptyRetryBudget = 16;

std::int64_t draw_demand(const std::variant<TruncatedGaussianModel,
                                            ConstantModel>& model,
                         Rng& rng);

std::int64_t draw_client(const ClientModel& model, Rng& rng) {
  if (const auto* g = std::get_if<TruncatedGaussianModel>(&model)) {
    const double x = rng.normal(g->mean, g->sd);
    const std::int64_t rounded = std::llround(x);
    return std::clamp(rounded, g->lo, g->hi);
  }
  if (const auto* c = std::get_if<ConstantModel>(&model)) {
    return c->value;
  }
  const auto& bern = std::get<BernoulliPresenceModel>(model);
  if (rng.next_double() >= bern.presence.p) return 0;
  // Condition the demand model on >= 1 by rejection.
  for (;;) {
    const std::int64_t b = draw_demand(bern.demand, rng);
    if (b >= 1) return b;
  }
}

std::int64_t draw_demand(
    const std::variant<TruncatedGaussianModel, ConstantModel>& model,
    Rng& rng) {
  if (const auto* c = std::get_if<ConstantModel>(&model)) return c->value;
  const auto& g = std::get<TruncatedGaussianModel>(model);
  const std::int64_t rounded = std::llround(rng.normal(g.mean, g.sd));
  return std::clamp(rounded, g.lo, g.hi);
}

void validate_model(const ClientModel& model) {
  if (const auto* g = std::get_if<TruncatedGaussianModel>(&model)) {
    if (g->lo > g->hi) throw InvalidArgument("client_model: lo > hi");
    if (g->lo < 0) throw InvalidArgument("client_model: lo must be >= 0");
    if (!(g->sd >= 0.0) || !std::isfinite(g->mean)) {
      throw InvalidArgument("client_model: bad gaussian parameters");
    }
  } else if (const auto* c = std::get_if<ConstantModel>(&model)) {
    if (c->value < 0) throw InvalidArgument("client_model: negative constant");
  } else {
    const auto& bern = std::get<BernoulliPresenceModel>(model);
    // The conditioned demand must be able to produce a value >= 1.
    if (const auto* c = std::get_if<ConstantModel>(&bern.demand)) {
      if (c->value < 1) {
        throw InvalidArgument(
            "client_model: bernoulli demand constant must be >= 1");
      }
    } else {
      const auto& g = std::get<TruncatedGaussianModel>(bern.demand);
      if (g.hi < 1) {
        throw InvalidArgument(
            "client_model: bernoulli demand range excludes values >= 1");
      }
    }
  }
}

Instance attach_costs_and_clients(std::vector<Point2> points,
                                  const GeneratorConfig& cfg, Rng& rng) {
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  std::vector<double> costs =
      sample_facility_costs(n, cfg.cost_lo, cfg.cost_hi, rng);
  std::vector<std::int64_t> clients = sample_clients(n, cfg.client_model, rng);
  if (cfg.min_one) {
    for (auto& b : clients) b = std::max<std::int64_t>(b, 1);
  }
  return Instance(MetricSpace::from_points(std::move(points)),
                  std::move(costs), std::move(clients));
}

}  // namespace

PresenceProb::PresenceProb(double prob) : p(prob) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw InvalidArgument("presence probability must be in (0, 1]");
  }
}

void GeneratorConfig::validate() const {
  if (n < 1) throw InvalidArgument("generator.n: must be >= 1");
  if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("generator.gamma: must be finite and >= 1");
  }
  if (!(delta_gen >= 0.0) || !std::isfinite(delta_gen)) {
    throw InvalidArgument("generator.delta_gen: must be finite and >= 0");
  }
  if (!(cost_lo >= 0.0) || !(cost_hi >= cost_lo) || !std::isfinite(cost_hi)) {
    throw InvalidArgument("generator.cost_range: need 0 <= lo <= hi");
  }
  validate_model(client_model);
}

MaternIntensities matern_intensities(const GeneratorConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("matern_intensities: n must be >= 2");
  const double log_n = std::log(static_cast<double>(cfg.n));
  const double lambda_daughter = cfg.gamma * cfg.gamma * log_n * log_n;
  return {static_cast<double>(cfg.n) / lambda_daughter, lambda_daughter};
}

std::vector<Point2> matern_points(const GeneratorConfig& cfg, Rng& rng) {
  const MaternIntensities intensities = matern_intensities(cfg);

  std::vector<Point2> points;
  const std::int64_t n_centers = rng.poisson(intensities.lambda_centers);
  for (std::int64_t c = 0; c < n_centers; ++c) {
    const Point2 center{rng.next_double(), rng.next_double()};
    const std::int64_t n_daughter = rng.poisson(intensities.lambda_daughter);
    for (std::int64_t i = 0; i < n_daughter; ++i) {
      const double radius = rng.uniform(0.0, cfg.delta_gen);
      const double angle = rng.next_double() * 2.0 * std::numbers::pi;
      const Point2 p{center.x + radius * std::cos(angle),
                     center.y + radius * std::sin(angle)};
      if (std::hypot(p.x - center.x, p.y - center.y) >
          cfg.delta_gen + 1e-9) {
        throw GenerationError("matern_points: daughter left its cluster");
      }
      points.push_back(p);
    }
  }
  return points;
}

std::vector<Point2> poisson_points(const GeneratorConfig& cfg, Rng& rng) {
  if (cfg.n < 1) throw InvalidArgument("poisson_points: n must be >= 1");
  const std::int64_t count = rng.poisson(static_cast<double>(cfg.n));
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    points.push_back({rng.next_double(), rng.next_double()});
  }
  return points;
}

std::vector<std::int64_t> sample_clients(std::int64_t count,
                                         const ClientModel& model, Rng& rng) {
  if (count < 0) throw InvalidArgument("sample_clients: count must be >= 0");
  validate_model(model);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(draw_client(model, rng));
  return out;
}

std::vector<double> sample_facility_costs(std::int64_t count, double lo,
                                          double hi, Rng& rng) {
  if (count < 0) {
    throw InvalidArgument("sample_facility_costs: count must be >= 0");
  }
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw InvalidArgument("sample_facility_costs: need 0 <= lo <= hi");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(rng.uniform(lo, hi));
  return out;
}

Instance generate_matern(const GeneratorConfig& cfg, Rng& rng) {
  cfg.validate();
  for (int attempt = 0; attempt < kEmptyRetryBudget; ++attempt) {
    std::vector<Point2> points = matern_points(cfg, rng);
    if (!points.empty()) {
      return attach_costs_and_clients(std::move(points), cfg, rng);
    }
  }
  throw GenerationError("generate_matern: no locations after " +
                        std::to_string(kEmptyRetryBudget) + " attempts");
}

Instance generate_poisson(const GeneratorConfig& cfg, Rng& rng) {
  cfg.validate();
  for (int attempt = 0; attempt < kEmptyRetryBudget; ++attempt) {
    std::vector<Point2> points = poisson_points(cfg, rng);
    if (!points.empty()) {
      return attach_costs_and_clients(std::move(points), cfg, rng);
    }
  }
  throw GenerationError("generate_poisson: no locations after " +
                        std::to_string(kEmptyRetryBudget) + " attempts");
}

Instance generate(PointProcess process, const GeneratorConfig& cfg, Rng& rng) {
  return process == PointProcess::kMatern ? generate_matern(cfg, rng)
                                          : generate_poisson(cfg, rng);
}

DensityReport density_check(const Instance& inst, double delta, double gamma) {
  if (!(delta >= 0.0)) throw InvalidArgument("density_check: delta must be >= 0");
  if (!(gamma >= 1.0)) throw InvalidArgument("density_check: gamma must be >= 1");
  const int n = inst.size();
  const double log_n = std::log(static_cast<double>(n));
  DensityReport report;
  report.threshold = gamma * gamma * log_n * log_n;
  report.ball_sizes.reserve(n);
  report.satisfied.reserve(n);
  for (int v = 0; v < n; ++v) {
    const int size = static_cast<int>(inst.metric().ball(v, delta).size());
    const bool ok = static_cast<double>(size) >= report.threshold;
    report.ball_sizes.push_back(size);
    report.satisfied.push_back(ok);
    if (ok) ++report.satisfied_count;
  }
  report.fraction =
      n == 0 ? 0.0 : static_cast<double>(report.satisfied_count) / n;
  return report;
}

}  // namespace flp
