#pragma once

#include <vector>

#include "flp/instance.hpp"
#include "flp/privacy.hpp"
#include "flp/solution.hpp"

namespace flp {

// Threshold graph on the marked set: an edge between distinct marked
// locations u, v whenever d(u, v) <= 2*delta.
struct ConflictGraph {
  std::vector<int> nodes;              // marked locations, ascending
  std::vector<std::vector<int>> adj;   // neighbor positions into `nodes`
  std::size_t edge_count = 0;
};

// Greedy maximal independent set; `chosen` is in pick order.
struct IndependentSetResult {
  std::vector<int> chosen;
};

struct SolveParams {
  SolveParams(PrivacyParams privacy, double delta);

  PrivacyParams privacy;
  double delta;  // reconnection radius, metric units
};

// h(v) = argmin_u f_u + d(u, v); ties broken by lowest index. Noise-free and
// shared by all three algorithms.
std::vector<int> optimal_assignment(const Instance& inst);

// The exact polynomial-time optimum: tight capacities over the optimal
// assignment.
Solution solve_optimal(const Instance& inst);

// Exhaustive minimum over all n^n assignment maps with tight capacities.
// Test oracle only; requires n <= 8.
CostBreakdown brute_force_oracle(const Instance& inst);

// Laplace mechanism + margin. The assignment is identical to the optimal
// one; each marked facility opens with capacity
// max(0, N'_v + (2/eps) sqrt(|L'_v|) ln(2n/alpha)).
Solution solve_ldp_margin(const Instance& inst, const PrivacyParams& params,
                          Rng& rng);
// Server side only, for harnesses that share one noise stream across
// algorithms.
Solution solve_ldp_margin(const Instance& inst, const PrivacyParams& params,
                          const NoisyCounts& noisy);

ConflictGraph build_conflict_graph(const Instance& inst,
                                   const std::vector<int>& marked,
                                   double delta);

// Ascending (facility cost, index) scan; a node joins the set iff none of
// its neighbors joined before it.
IndependentSetResult greedy_mis(const ConflictGraph& graph,
                                const std::vector<double>& facility_costs);

// Ball members map to their ball's center (earlier pick wins at ties);
// uncovered locations map to argmin over I of f_v + d(u, v), lowest index.
std::vector<int> reconnect(const Instance& inst,
                           const IndependentSetResult& chosen, double delta);

// Reconnection pipeline: perturb -> optimal assignment -> marked set ->
// conflict graph -> greedy MIS -> reconnect -> margined capacities.
Solution solve_ldp_reconnection(const Instance& inst, const SolveParams& params,
                                Rng& rng);
Solution solve_ldp_reconnection(const Instance& inst, const SolveParams& params,
                                const NoisyCounts& noisy);

std::vector<int> marked_set(const std::vector<int>& assignment);

}  // namespace flp
