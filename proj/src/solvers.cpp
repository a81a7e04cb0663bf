#include "flp/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "flp/errors.hpp"

namespace flp {

namespace {

// Connected sets L_v keyed by facility, facilities ascending.
std::vector<std::pair<int, std::vector<int>>> connected_sets(
    const std::vector<int>& assignment) {
  std::vector<std::pair<int, std::vector<int>>> sets;
  for (int facility : marked_set(assignment)) sets.push_back({facility, {}});
  for (int v = 0; v < static_cast<int>(assignment.size()); ++v) {
    const int target = assignment[v];
    auto it = std::lower_bound(
        sets.begin(), sets.end(), target,
        [](const auto& entry, int key) { return entry.first < key; });
    assert(it != sets.end() && it->first == target);
    it->second.push_back(v);
  }
  return sets;
}

// Margined capacities for the facilities owning `sets`, from one shared
// noisy-count stream. Clamp events are recorded in the trace.
void open_with_margin(const std::vector<std::pair<int, std::vector<int>>>& sets,
                      const NoisyCounts& noisy, const PrivacyParams& params,
                      std::int64_t n, Solution& sol) {
  for (const auto& [facility, members] : sets) {
    double noisy_load = 0.0;
    for (int u : members) noisy_load += noisy.values[u];
    const double m = margin(static_cast<std::int64_t>(members.size()), params,
                            n);
    const double raw = noisy_load + m;
    const bool clamped = raw < 0.0;
    sol.facilities.push_back({facility, clamped ? 0.0 : raw});
    sol.trace.push_back({facility, static_cast<int>(members.size()),
                         noisy_load, m, clamped});
  }
}

}  // namespace

SolveParams::SolveParams(PrivacyParams privacy_params, double reconn_delta)
    : privacy(privacy_params), delta(reconn_delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("delta must be finite and >= 0");
  }
}

std::vector<int> marked_set(const std::vector<int>& assignment) {
  std::vector<int> marked;
  for (int v = 0; v < static_cast<int>(assignment.size()); ++v) {
    if (assignment[v] == v) marked.push_back(v);
  }
  return marked;
}

std::vector<int> optimal_assignment(const Instance& inst) {
  const int n = inst.size();
  const auto& f = inst.facility_costs();
  const auto& metric = inst.metric();
  std::vector<int> h(n);
  for (int v = 0; v < n; ++v) {
    int best = 0;
    double best_value = f[0] + metric(0, v);
    for (int u = 1; u < n; ++u) {
      const double value = f[u] + metric(u, v);
      if (value < best_value) {
        best = u;
        best_value = value;
      }
    }
    h[v] = best;
  }
  return h;
}

Solution solve_optimal(const Instance& inst) {
  Solution sol;
  sol.assignment = optimal_assignment(inst);
  sol.noise_draws = 0;
  for (const auto& [facility, members] : connected_sets(sol.assignment)) {
    std::int64_t load = 0;
    for (int u : members) load += inst.clients()[u];
    sol.facilities.push_back({facility, static_cast<double>(load)});
    sol.trace.push_back({facility, static_cast<int>(members.size()),
                         static_cast<double>(load), 0.0, false});
  }
  return sol;
}

CostBreakdown brute_force_oracle(const Instance& inst) {
  const int n = inst.size();
  if (n > 8) {
    throw InvalidArgument("brute_force_oracle: n = " + std::to_string(n) +
                          " exceeds the enumeration limit 8");
  }
  const auto& f = inst.facility_costs();
  const auto& b = inst.clients();
  const auto& metric = inst.metric();

  std::vector<int> h(n, 0);
  std::vector<int> best_h(n, 0);
  double best_total = std::numeric_limits<double>::infinity();
  for (;;) {
    double total = 0.0;
    for (int v = 0; v < n; ++v) {
      total += static_cast<double>(b[v]) * (f[h[v]] + metric(v, h[v]));
    }
    if (total < best_total) {
      best_total = total;
      best_h = h;
    }
    // Odometer over all n^n assignment maps.
    int pos = 0;
    while (pos < n && ++h[pos] == n) h[pos++] = 0;
    if (pos == n) break;
  }

  CostBreakdown out;
  for (int v = 0; v < n; ++v) {
    out.facility_cost += static_cast<double>(b[v]) * f[best_h[v]];
    out.connection_cost += static_cast<double>(b[v]) * metric(v, best_h[v]);
  }
  out.total = out.facility_cost + out.connection_cost;
  return out;
}

Solution solve_ldp_margin(const Instance& inst, const PrivacyParams& params,
                          const NoisyCounts& noisy) {
  if (noisy.values.size() != static_cast<std::size_t>(inst.size())) {
    throw InvalidArgument("solve_ldp_margin: noisy counts size mismatch");
  }
  Solution sol;
  sol.assignment = optimal_assignment(inst);
  sol.noise_draws = inst.size();
  open_with_margin(connected_sets(sol.assignment), noisy, params, inst.size(),
                   sol);
  return sol;
}

Solution solve_ldp_margin(const Instance& inst, const PrivacyParams& params,
                          Rng& rng) {
  return solve_ldp_margin(inst, params,
                          perturb_counts(inst.clients(), params, rng));
}

ConflictGraph build_conflict_graph(const Instance& inst,
                                   const std::vector<int>& marked,
                                   double delta) {
  if (!(delta >= 0.0)) {
    throw InvalidArgument("build_conflict_graph: delta must be >= 0");
  }
  ConflictGraph g;
  g.nodes = marked;
  std::sort(g.nodes.begin(), g.nodes.end());
  const int m = static_cast<int>(g.nodes.size());
  g.adj.assign(m, {});
  const auto& metric = inst.metric();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (metric(g.nodes[i], g.nodes[j]) <= 2.0 * delta) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
        ++g.edge_count;
      }
    }
  }
  return g;
}

IndependentSetResult greedy_mis(const ConflictGraph& graph,
                                const std::vector<double>& facility_costs) {
  const int m = static_cast<int>(graph.nodes.size());
  if (m == 0) throw InvalidArgument("greedy_mis: empty node set");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double fa = facility_costs[graph.nodes[a]];
    const double fb = facility_costs[graph.nodes[b]];
    if (fa != fb) return fa < fb;
    return graph.nodes[a] < graph.nodes[b];
  });
  std::vector<char> selected(m, 0);
  IndependentSetResult result;
  for (int pos : order) {
    bool blocked = false;
    for (int neighbor : graph.adj[pos]) {
      if (selected[neighbor]) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      selected[pos] = 1;
      result.chosen.push_back(graph.nodes[pos]);
    }
  }
  return result;
}

std::vector<int> reconnect(const Instance& inst,
                           const IndependentSetResult& chosen, double delta) {
  if (chosen.chosen.empty()) {
    throw InvalidArgument("reconnect: independent set is empty");
  }
  const int n = inst.size();
  const auto& f = inst.facility_costs();
  const auto& metric = inst.metric();
  std::vector<int> assignment(n, -1);
  // Ball rule first, in pick order; earlier centers win boundary overlaps.
  for (int center : chosen.chosen) {
    for (int u = 0; u < n; ++u) {
      if (assignment[u] == -1 && metric(center, u) <= delta) {
        assignment[u] = center;
      }
    }
  }
  // Ascending-index argmin over I keeps ties deterministic.
  std::vector<int> by_index = chosen.chosen;
  std::sort(by_index.begin(), by_index.end());
  for (int u = 0; u < n; ++u) {
    if (assignment[u] != -1) continue;
    int best = by_index[0];
    double best_value = f[best] + metric(best, u);
    for (std::size_t i = 1; i < by_index.size(); ++i) {
      const int v = by_index[i];
      const double value = f[v] + metric(v, u);
      if (value < best_value) {
        best = v;
        best_value = value;
      }
    }
    assignment[u] = best;
  }
  return assignment;
}

Solution solve_ldp_reconnection(const Instance& inst,
                                const SolveParams& params,
                                const NoisyCounts& noisy) {
  if (noisy.values.size() != static_cast<std::size_t>(inst.size())) {
    throw InvalidArgument("solve_ldp_reconnection: noisy counts size mismatch");
  }
  const std::vector<int> base = optimal_assignment(inst);
  const ConflictGraph graph =
      build_conflict_graph(inst, marked_set(base), params.delta);
  const IndependentSetResult chosen =
      greedy_mis(graph, inst.facility_costs());

  Solution sol;
  sol.assignment = reconnect(inst, chosen, params.delta);
  sol.noise_draws = inst.size();
  open_with_margin(connected_sets(sol.assignment), noisy, params.privacy,
                   inst.size(), sol);
  return sol;
}

Solution solve_ldp_reconnection(const Instance& inst,
                                const SolveParams& params, Rng& rng) {
  return solve_ldp_reconnection(
      inst, params, perturb_counts(inst.clients(), params.privacy, rng));
}

}  // namespace flp
