#include "flp/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "flp/errors.hpp"

namespace flp {

CostBreakdown total_cost(const Instance& inst, const Solution& sol) {
  const int n = inst.size();
  if (static_cast<int>(sol.assignment.size()) != n) {
    throw InvalidArgument("total_cost: assignment size mismatch");
  }
  std::unordered_map<int, double> capacity;
  for (const OpenFacility& f : sol.facilities) {
    capacity.emplace(f.location, f.capacity);
  }
  CostBreakdown out;
  for (const OpenFacility& f : sol.facilities) {
    out.facility_cost += f.capacity * inst.facility_costs()[f.location];
  }
  for (int v = 0; v < n; ++v) {
    const int target = sol.assignment[v];
    if (target < 0 || target >= n || !capacity.contains(target)) {
      throw InvalidArgument("total_cost: location " + std::to_string(v) +
                            " assigned to non-open facility " +
                            std::to_string(target));
    }
    out.connection_cost +=
        static_cast<double>(inst.clients()[v]) * inst.metric()(v, target);
  }
  out.total = out.facility_cost + out.connection_cost;
  return out;
}

FeasibilityReport check_capacities(const Instance& inst, const Solution& sol) {
  const int n = inst.size();
  if (static_cast<int>(sol.assignment.size()) != n) {
    throw InvalidArgument("check_capacities: assignment size mismatch");
  }
  std::unordered_map<int, std::int64_t> load;
  for (const OpenFacility& f : sol.facilities) load.emplace(f.location, 0);
  for (int v = 0; v < n; ++v) {
    const int target = sol.assignment[v];
    auto it = load.find(target);
    if (it == load.end()) {
      throw InvalidArgument("check_capacities: location " + std::to_string(v) +
                            " assigned to non-open facility " +
                            std::to_string(target));
    }
    it->second += inst.clients()[v];
  }
  FeasibilityReport report;
  for (const OpenFacility& f : sol.facilities) {
    const double true_load = static_cast<double>(load.at(f.location));
    if (true_load > f.capacity) {
      report.failed_facilities.push_back(f.location);
      report.worst_overload =
          std::max(report.worst_overload, true_load - f.capacity);
    }
  }
  report.any_failure = !report.failed_facilities.empty();
  return report;
}

double normalized_cost(double cost, double opt) {
  if (!(opt > 0.0)) {
    throw InvalidArgument("normalized_cost: opt must be > 0");
  }
  return cost / opt;
}

namespace {

double noise_factor(std::int64_t n, const PrivacyParams& params) {
  return (2.0 / params.epsilon) *
         std::log(2.0 * static_cast<double>(n) / params.alpha);
}

}  // namespace

double bound_margin(std::int64_t n, const PrivacyParams& params, double opt) {
  if (n < 1) throw InvalidArgument("bound_margin: n must be >= 1");
  if (opt < 0.0) throw InvalidArgument("bound_margin: opt must be >= 0");
  return (1.0 + noise_factor(n, params)) * opt;
}

ReconnBound bound_reconnection(std::int64_t n, const PrivacyParams& params,
                               double gamma, double delta, double b_avg,
                               double opt) {
  if (n < 2) throw InvalidArgument("bound_reconnection: n must be >= 2");
  if (!(gamma >= 1.0)) {
    throw InvalidArgument("bound_reconnection: gamma must be >= 1");
  }
  if (!(delta >= 0.0)) {
    throw InvalidArgument("bound_reconnection: delta must be >= 0");
  }
  if (opt < 0.0) throw InvalidArgument("bound_reconnection: opt must be >= 0");
  const double noise =
      noise_factor(n, params) / (gamma * std::log(static_cast<double>(n)));
  ReconnBound out;
  out.mult = (1.0 + noise) * opt;
  out.additive = delta * static_cast<double>(n) * (4.0 * b_avg + noise);
  return out;
}

BoundReport compute_bounds(std::int64_t n, const PrivacyParams& params,
                           double gamma, double delta, double b_avg) {
  if (n < 2) throw InvalidArgument("compute_bounds: n must be >= 2");
  if (!(gamma >= 1.0)) {
    throw InvalidArgument("compute_bounds: gamma must be >= 1");
  }
  const double noise = noise_factor(n, params);
  const double reconn_noise =
      noise / (gamma * std::log(static_cast<double>(n)));
  BoundReport report;
  report.mult_margin_bound = 1.0 + noise;
  report.mult_reconn_bound = 1.0 + reconn_noise;
  report.additive_reconn_bound =
      delta * static_cast<double>(n) * (4.0 * b_avg + reconn_noise);
  report.b_avg = b_avg;
  return report;
}

CostReport evaluate_solution(const Instance& inst, const Solution& sol,
                             double opt,
                             const std::optional<BoundReport>& bounds) {
  CostReport report;
  report.cost = total_cost(inst, sol);
  report.opt = opt;
  report.normalized = normalized_cost(report.cost.total, opt);
  report.feasibility = check_capacities(inst, sol);
  report.bounds = bounds;
  return report;
}

}  // namespace flp
