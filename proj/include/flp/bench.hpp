#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flp/generators.hpp"
#include "flp/instance.hpp"
#include "flp/solvers.hpp"

namespace flp {

enum class SweepKind { kDelta, kEpsilon, kN, kBAvg, kSingle };
enum class Algorithm { kOptimal, kMargin, kReconnection };

std::string to_string(SweepKind kind);
std::string to_string(Algorithm algo);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  // start, start+step, ..., <= stop (fp-tolerant endpoint).
  std::vector<double> values() const;
};

struct SweepConfig {
  SweepKind kind = SweepKind::kSingle;
  Grid grid;
  int trials_per_point = 1;
  PointProcess process = PointProcess::kMatern;
  GeneratorConfig generator;
  SolveParams solve{PrivacyParams(0.1, 0.1), 0.2};
  std::vector<Algorithm> algorithms = {Algorithm::kOptimal, Algorithm::kMargin,
                                       Algorithm::kReconnection};
  std::uint64_t master_seed = 0;
  std::string output_path;
  int threads = 1;
  bool measure_runtime = false;  // off by default: timing breaks byte-identity

  void validate() const;
};

struct ResultRow {
  std::string sweep_kind;
  double sweep_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string algorithm;
  int realized_n = 0;
  double total_cost = 0.0;
  double facility_cost = 0.0;
  double connection_cost = 0.0;
  double opt_cost = 0.0;
  double normalized_cost = 0.0;
  bool failed = false;
  int n_open_facilities = 0;
  double runtime_ms = 0.0;
};

// Runs the sweep: per (grid point, trial) a fresh instance from a derived
// seed, one shared noise stream for both private algorithms, rows in
// deterministic (point, trial, algorithm) order. Fans out across threads
// when cfg.threads > 1; the output is identical for any thread count.
std::vector<ResultRow> run_sweep(const SweepConfig& cfg);

std::string csv_header();
std::string to_csv_line(const ResultRow& row);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

// Loads an "id,x,y,clients" table: positions are affinely rescaled into the
// unit square (aspect-preserving, centered; coincident inputs collapse to
// (0.5, 0.5)), facility costs are sampled uniform [cost_lo, cost_hi] from
// the seed, client counts are taken verbatim.
Instance load_realworld(const std::string& bytes, double cost_lo,
                        double cost_hi, std::uint64_t seed);
Instance load_realworld_file(const std::string& path, double cost_lo,
                             double cost_hi, std::uint64_t seed);

}  // namespace flp
