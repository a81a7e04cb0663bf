#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flp/instance.hpp"
#include "flp/privacy.hpp"
#include "flp/solution.hpp"

namespace flp {

// Facilities whose true connected demand exceeds their capacity.
struct FeasibilityReport {
  std::vector<int> failed_facilities;
  bool any_failure = false;
  double worst_overload = 0.0;
};

// Theoretical-bound summary. Multiplicative entries are factors (apply to
// OPT); the additive entry is an absolute cost.
struct BoundReport {
  double mult_margin_bound = 1.0;      // 1 + (2/eps) ln(2n/alpha)
  double mult_reconn_bound = 1.0;      // 1 + (2/eps) ln(2n/alpha) / (gamma ln n)
  double additive_reconn_bound = 0.0;  // delta n (4 b_avg + noise term)
  double b_avg = 0.0;
};

// Exact evaluation of the cost with the true client counts.
CostBreakdown total_cost(const Instance& inst, const Solution& sol);

FeasibilityReport check_capacities(const Instance& inst, const Solution& sol);

double normalized_cost(double cost, double opt);

// Margin-algorithm expected-cost bound: (1 + (2/eps) ln(2n/alpha)) * opt.
double bound_margin(std::int64_t n, const PrivacyParams& params, double opt);

struct ReconnBound {
  double mult = 0.0;      // (1 + (2/eps) ln(2n/alpha) / (gamma ln n)) * opt
  double additive = 0.0;  // delta n (4 b_avg + (2/eps) ln(2n/alpha)/(gamma ln n))
};

// Reconnection-algorithm expected-cost bound. The derivation charges each
// location for at least one client, so instances with many empty locations
// fall outside the bound's hypotheses (the margin sweeps still report it
// for reference).
ReconnBound bound_reconnection(std::int64_t n, const PrivacyParams& params,
                               double gamma, double delta, double b_avg,
                               double opt);

BoundReport compute_bounds(std::int64_t n, const PrivacyParams& params,
                           double gamma, double delta, double b_avg);

// Combined per-solution evaluation (the CLI's cost summary).
struct CostReport {
  CostBreakdown cost;
  double opt = 0.0;
  double normalized = 0.0;
  FeasibilityReport feasibility;
  std::optional<BoundReport> bounds;
};

CostReport evaluate_solution(const Instance& inst, const Solution& sol,
                             double opt,
                             const std::optional<BoundReport>& bounds = {});

}  // namespace flp
