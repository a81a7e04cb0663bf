#pragma once

#include <string>
#include <vector>

namespace flp {

// Per-facility solve record: connected-set size, noisy load, margin, and
// whether the non-negativity clamp fired.
struct FacilityTrace {
  int facility = 0;
  int connected = 0;       // |L_v|
  double noisy_load = 0.0;  // N_v
  double margin = 0.0;      // m_v
  bool clamped = false;
};

struct OpenFacility {
  int location = 0;
  double capacity = 0.0;
};

// Output of any solver: a total connection map plus capacities for the open
// facilities (ascending location order).
struct Solution {
  std::vector<int> assignment;           // h(v) per location
  std::vector<OpenFacility> facilities;  // open set with real capacities
  std::vector<FacilityTrace> trace;      // one entry per open facility
  int noise_draws = 0;                   // Laplace draws spent (0 or n)

  bool is_open(int location) const;
  double capacity_of(int location) const;  // throws if not open
};

struct CostBreakdown {
  double facility_cost = 0.0;
  double connection_cost = 0.0;
  double total = 0.0;
};

// Debug/diffing export: {"assignment": [...], "capacities": {v: k_v},
// "trace": [...]}.
std::string save_solution(const Solution& sol);
Solution load_solution(const std::string& bytes);
void save_solution_file(const Solution& sol, const std::string& path);

}  // namespace flp
