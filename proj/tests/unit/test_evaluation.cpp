#include "flp/evaluation.hpp"

#include <cmath>

#include <doctest.h>

#include "flp/errors.hpp"
#include "flp/generators.hpp"
#include "flp/solvers.hpp"

using namespace flp;

namespace {

Instance random_instance(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> pts;
  std::vector<double> costs;
  std::vector<std::int64_t> clients;
  for (int i = 0; i < n; ++i) {
    pts.push_back({rng.next_double(), rng.next_double()});
    costs.push_back(rng.next_double());
    clients.push_back(static_cast<std::int64_t>(rng.next_u64() % 6));
  }
  return Instance(MetricSpace::from_points(pts), costs, clients);
}

}  // namespace

TEST_CASE("total cost of a hand-built solution") {
  // One open facility s=0 with k=2, f=1.5; two locations with b=(1,1),
  // d(1,0)=0.5.
  const Instance inst(MetricSpace::from_matrix(2, {0, 0.5, 0.5, 0}),
                      {1.5, 9.0}, {1, 1});
  Solution sol;
  sol.assignment = {0, 0};
  sol.facilities = {{0, 2.0}};
  const CostBreakdown cost = total_cost(inst, sol);
  CHECK(cost.facility_cost == doctest::Approx(3.0));
  CHECK(cost.connection_cost == doctest::Approx(0.5));
  CHECK(cost.total == doctest::Approx(3.5));
}

TEST_CASE("zero clients mean zero connection cost") {
  const Instance inst(MetricSpace::from_matrix(2, {0, 0.5, 0.5, 0}),
                      {1.0, 1.0}, {0, 0});
  const Solution sol = solve_optimal(inst);
  CHECK(total_cost(inst, sol).connection_cost == 0.0);
}

TEST_CASE("self-assigned singleton pays only capacity times cost") {
  const Instance inst(build_metric({{0.2, 0.8}}), {2.5}, {4});
  const Solution sol = solve_optimal(inst);
  const CostBreakdown cost = total_cost(inst, sol);
  CHECK(cost.connection_cost == 0.0);
  CHECK(cost.total == doctest::Approx(4 * 2.5));
}

TEST_CASE("assignment into a non-open facility is an error") {
  const Instance inst(MetricSpace::from_matrix(2, {0, 0.5, 0.5, 0}),
                      {1.0, 1.0}, {1, 1});
  Solution sol;
  sol.assignment = {0, 1};
  sol.facilities = {{0, 2.0}};
  CHECK_THROWS_AS(total_cost(inst, sol), InvalidArgument);
  CHECK_THROWS_AS(check_capacities(inst, sol), InvalidArgument);
}

TEST_CASE("total cost is additive over per-facility partitions") {
  const Instance inst = random_instance(60, 42);
  const Solution sol = solve_optimal(inst);
  const CostBreakdown whole = total_cost(inst, sol);
  double pieced = 0.0;
  for (const OpenFacility& f : sol.facilities) {
    pieced += f.capacity * inst.facility_costs()[f.location];
    for (int v = 0; v < inst.size(); ++v) {
      if (sol.assignment[v] == f.location) {
        pieced += static_cast<double>(inst.clients()[v]) *
                  inst.metric()(v, f.location);
      }
    }
  }
  CHECK(whole.total == doctest::Approx(pieced).epsilon(1e-12));
  CHECK(whole.total ==
        doctest::Approx(whole.facility_cost + whole.connection_cost));
}

TEST_CASE("overloaded facilities are reported") {
  const Instance inst(MetricSpace::from_matrix(2, {0, 0.5, 0.5, 0}),
                      {1.0, 1.0}, {2, 1});
  Solution sol;
  sol.assignment = {0, 0};
  sol.facilities = {{0, 2.0}};  // true load is 3
  const FeasibilityReport report = check_capacities(inst, sol);
  CHECK(report.any_failure);
  CHECK(report.failed_facilities == std::vector<int>{0});
  CHECK(report.worst_overload == doctest::Approx(1.0));
}

TEST_CASE("optimal solutions never fail the capacity check") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(40, 7000 + seed);
    CHECK_FALSE(check_capacities(inst, solve_optimal(inst)).any_failure);
  }
}

TEST_CASE("non-failed margin runs never cost less than the optimum") {
  const PrivacyParams params(0.2, 0.1);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(40, 8800 + seed);
    const double opt = total_cost(inst, solve_optimal(inst)).total;
    Rng rng(seed);
    const Solution sol = solve_ldp_margin(inst, params, rng);
    if (!check_capacities(inst, sol).any_failure) {
      CHECK(total_cost(inst, sol).total >= opt - 1e-9);
    }
  }
}

TEST_CASE("margin solutions never fail at huge epsilon") {
  const Instance inst = random_instance(50, 99);
  const PrivacyParams params(1e6, 0.1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Solution sol = solve_ldp_margin(inst, params, rng);
    CHECK_FALSE(check_capacities(inst, sol).any_failure);
  }
}

TEST_CASE("normalized cost") {
  CHECK(normalized_cost(3.5, 3.5) == 1.0);
  CHECK(normalized_cost(7.0, 3.5) == 2.0);
  CHECK_THROWS_AS(normalized_cost(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(normalized_cost(1.0, -2.0), InvalidArgument);
}

TEST_CASE("optimal always normalizes to one") {
  const Instance inst = random_instance(30, 11);
  const double opt = total_cost(inst, solve_optimal(inst)).total;
  CHECK(normalized_cost(opt, opt) == 1.0);
}

TEST_CASE("margin bound fixture") {
  const PrivacyParams params(0.1, 0.1);
  CHECK(bound_margin(1000, params, 1.0) ==
        doctest::Approx(199.06975105072254).epsilon(1e-12));
  CHECK(bound_margin(1000, params, 0.0) == 0.0);
  // huge epsilon: factor tends to 1
  CHECK(bound_margin(1000, PrivacyParams(1e9, 0.1), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("reconnection bound fixture") {
  const PrivacyParams params(0.1, 0.1);
  const ReconnBound bound = bound_reconnection(1000, params, 2.0, 0.2, 2.5,
                                               1.0);
  CHECK(bound.mult == doctest::Approx(15.336766652213269).epsilon(1e-12));
  // additive: 0.2 * 1000 * (4 * 2.5 + 14.336766652213269)
  CHECK(bound.additive ==
        doctest::Approx(0.2 * 1000 * (10.0 + 14.336766652213269))
            .epsilon(1e-12));
  CHECK(bound_reconnection(1000, params, 2.0, 0.0, 2.5, 1.0).additive == 0.0);
}

TEST_CASE("reconnection multiplicative factor undercuts the margin factor") {
  Rng rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t n = 3 + static_cast<std::int64_t>(rng.next_u64() % 5000);
    const PrivacyParams params(0.01 + rng.next_double(),
                               0.01 + 0.9 * rng.next_double());
    const double gamma = 1.0 + 3.0 * rng.next_double();
    const BoundReport report = compute_bounds(n, params, gamma, 0.2, 2.5);
    if (gamma * std::log(static_cast<double>(n)) > 1.0) {
      CHECK(report.mult_reconn_bound < report.mult_margin_bound);
    }
    CHECK(report.mult_margin_bound >= 1.0);
    CHECK(report.mult_reconn_bound >= 1.0);
  }
}

TEST_CASE("bounds are monotone in epsilon and n") {
  Rng rng(707);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t n = 3 + static_cast<std::int64_t>(rng.next_u64() % 5000);
    const double eps = 0.01 + rng.next_double();
    const double alpha = 0.01 + 0.9 * rng.next_double();
    const double opt = 1.0 + rng.next_double() * 10;
    CHECK(bound_margin(n, PrivacyParams(eps, alpha), opt) >
          bound_margin(n, PrivacyParams(eps * 2, alpha), opt));
    CHECK(bound_margin(2 * n, PrivacyParams(eps, alpha), opt) >
          bound_margin(n, PrivacyParams(eps, alpha), opt));
    const ReconnBound lo_eps =
        bound_reconnection(n, PrivacyParams(eps, alpha), 2.0, 0.2, 2.5, opt);
    const ReconnBound hi_eps = bound_reconnection(
        n, PrivacyParams(eps * 2, alpha), 2.0, 0.2, 2.5, opt);
    CHECK(lo_eps.mult > hi_eps.mult);
    CHECK(lo_eps.additive > hi_eps.additive);
  }
}

TEST_CASE("evaluate_solution assembles the report") {
  const Instance inst = random_instance(20, 3);
  const Solution sol = solve_optimal(inst);
  const double opt = total_cost(inst, sol).total;
  const CostReport report = evaluate_solution(inst, sol, opt);
  CHECK(report.normalized == 1.0);
  CHECK_FALSE(report.feasibility.any_failure);
  CHECK_FALSE(report.bounds.has_value());
}
