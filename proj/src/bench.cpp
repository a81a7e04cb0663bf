#include "flp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "flp/errors.hpp"
#include "flp/evaluation.hpp"

namespace flp {

namespace {

// Seed-derivation stream tags.
constexpr std::uint64_t kStreamTrial = 1;
constexpr std::uint64_t kStreamGen = 2;
constexpr std::uint64_t kStreamNoise = 3;

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

struct TrialTask {
  int point_index = 0;
  int trial = 0;
  double value = 0.0;
};

// All rows of one (point, trial), in canonical algorithm order.
std::vector<ResultRow> run_trial(const SweepConfig& cfg, const TrialTask& task) {
  GeneratorConfig gen = cfg.generator;
  SolveParams solve = cfg.solve;
  switch (cfg.kind) {
    case SweepKind::kDelta:
      solve = SolveParams(solve.privacy, task.value);
      break;
    case SweepKind::kEpsilon:
      solve = SolveParams(PrivacyParams(task.value, solve.privacy.alpha),
                          solve.delta);
      break;
    case SweepKind::kN:
      gen.n = std::llround(task.value);
      break;
    case SweepKind::kBAvg:
      gen.client_model = ConstantModel{std::llround(task.value)};
      break;
    case SweepKind::kSingle:
      break;
  }

  const std::uint64_t trial_seed =
      derive_seed(cfg.master_seed, kStreamTrial,
                  static_cast<std::uint64_t>(task.point_index) << 32 |
                      static_cast<std::uint64_t>(task.trial));
  Rng gen_rng(derive_seed(trial_seed, kStreamGen, 0));
  const Instance inst = generate(cfg.process, gen, gen_rng);

  const Solution optimal = solve_optimal(inst);
  const CostBreakdown opt_cost = total_cost(inst, optimal);

  // One noise stream per trial, shared by both private algorithms.
  Rng noise_rng(derive_seed(trial_seed, kStreamNoise, 0));
  const NoisyCounts noisy =
      perturb_counts(inst.clients(), solve.privacy, noise_rng);

  std::vector<ResultRow> rows;
  for (Algorithm algo : cfg.algorithms) {
    const auto started = std::chrono::steady_clock::now();
    Solution sol;
    switch (algo) {
      case Algorithm::kOptimal:
        sol = optimal;
        break;
      case Algorithm::kMargin:
        sol = solve_ldp_margin(inst, solve.privacy, noisy);
        break;
      case Algorithm::kReconnection:
        sol = solve_ldp_reconnection(inst, solve, noisy);
        break;
    }
    const auto finished = std::chrono::steady_clock::now();

    const CostBreakdown cost = total_cost(inst, sol);
    const FeasibilityReport feasibility = check_capacities(inst, sol);
    ResultRow row;
    row.sweep_kind = to_string(cfg.kind);
    row.sweep_value = task.value;
    row.trial = task.trial;
    row.seed = trial_seed;
    row.algorithm = to_string(algo);
    row.realized_n = inst.size();
    row.total_cost = cost.total;
    row.facility_cost = cost.facility_cost;
    row.connection_cost = cost.connection_cost;
    row.opt_cost = opt_cost.total;
    row.normalized_cost =
        opt_cost.total > 0.0 ? cost.total / opt_cost.total : 0.0;
    row.failed = feasibility.any_failure;
    row.n_open_facilities = static_cast<int>(sol.facilities.size());
    if (cfg.measure_runtime) {
      row.runtime_ms =
          std::chrono::duration<double, std::milli>(finished - started)
              .count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::kDelta: return "delta";
    case SweepKind::kEpsilon: return "epsilon";
    case SweepKind::kN: return "n";
    case SweepKind::kBAvg: return "bavg";
    case SweepKind::kSingle: return "single";
  }
  throw InvalidArgument("unknown sweep kind");
}

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kOptimal: return "optimal";
    case Algorithm::kMargin: return "margin";
    case Algorithm::kReconnection: return "reconnection";
  }
  throw InvalidArgument("unknown algorithm");
}

std::vector<double> Grid::values() const {
  if (!(step > 0.0)) throw InvalidArgument("grid: step must be > 0");
  if (stop < start) throw InvalidArgument("grid: stop must be >= start");
  const auto count =
      static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    out.push_back(start + static_cast<double>(i) * step);
  }
  return out;
}

void SweepConfig::validate() const {
  grid.values();
  if (trials_per_point < 1) {
    throw InvalidArgument("sweep: trials must be >= 1");
  }
  if (algorithms.empty()) {
    throw InvalidArgument("sweep: at least one algorithm required");
  }
  if (threads < 1) throw InvalidArgument("sweep: threads must be >= 1");
  generator.validate();
}

std::vector<ResultRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<double> points = cfg.grid.values();

  std::vector<TrialTask> tasks;
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    for (int t = 0; t < cfg.trials_per_point; ++t) {
      tasks.push_back({p, t, points[p]});
    }
  }

  std::vector<std::vector<ResultRow>> slots(tasks.size());
  const int workers =
      std::min<int>(cfg.threads, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      slots[i] = run_trial(cfg, tasks[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          slots[i] = run_trial(cfg, tasks[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<ResultRow> rows;
  rows.reserve(tasks.size() * cfg.algorithms.size());
  for (auto& slot : slots) {
    for (auto& row : slot) rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header() {
  return "sweep_kind,sweep_value,trial,seed,algorithm,realized_n,total_cost,"
         "facility_cost,connection_cost,opt_cost,normalized_cost,failed,"
         "n_open_facilities,runtime_ms";
}

std::string to_csv_line(const ResultRow& row) {
  std::ostringstream line;
  line << row.sweep_kind << ',' << format_real(row.sweep_value) << ','
       << row.trial << ',' << row.seed << ',' << row.algorithm << ','
       << row.realized_n << ',' << format_real(row.total_cost) << ','
       << format_real(row.facility_cost) << ','
       << format_real(row.connection_cost) << ','
       << format_real(row.opt_cost) << ','
       << format_real(row.normalized_cost) << ',' << (row.failed ? 1 : 0)
       << ',' << row.n_open_facilities << ',' << format_real(row.runtime_ms);
  return line.str();
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write CSV file: " + path);
  out << csv_header() << '\n';
  for (const ResultRow& row : rows) out << to_csv_line(row) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

Instance load_realworld(const std::string& bytes, double cost_lo,
                        double cost_hi, std::uint64_t seed) {
  std::istringstream in(bytes);
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidArgument("realworld table: empty input");
  }
  // Header row is required: id,x,y,clients.
  {
    auto header = split_csv_row(line);
    if (header.size() != 4 || header[0] != "id" || header[1] != "x" ||
        header[2] != "y" || header[3] != "clients") {
      throw InvalidArgument(
          "realworld table: expected header 'id,x,y,clients'");
    }
  }
  std::vector<Point2> points;
  std::vector<std::int64_t> clients;
  std::size_t row_number = 1;
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != 4) {
      throw InvalidArgument("realworld table row " +
                            std::to_string(row_number) +
                            ": expected 4 fields");
    }
    try {
      const double x = std::stod(fields[1]);
      const double y = std::stod(fields[2]);
      const std::int64_t b = std::stoll(fields[3]);
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw InvalidArgument("non-finite coordinate");
      }
      if (b < 0) throw InvalidArgument("negative client count");
      points.push_back({x, y});
      clients.push_back(b);
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidArgument("realworld table row " +
                            std::to_string(row_number) + ": malformed value");
    }
  }
  if (points.empty()) {
    throw InvalidArgument("realworld table: no data rows");
  }

  // Aspect-preserving rescale of the bounding box into [0,1]^2, centered.
  double min_x = points[0].x, max_x = points[0].x;
  double min_y = points[0].y, max_y = points[0].y;
  for (const Point2& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double width = max_x - min_x;
  const double height = max_y - min_y;
  const double extent = std::max(width, height);
  for (Point2& p : points) {
    if (extent == 0.0) {
      p = {0.5, 0.5};
    } else {
      const double scale = 1.0 / extent;
      p.x = (p.x - min_x) * scale + (1.0 - width * scale) / 2.0;
      p.y = (p.y - min_y) * scale + (1.0 - height * scale) / 2.0;
    }
  }

  Rng rng(seed);
  std::vector<double> costs = sample_facility_costs(
      static_cast<std::int64_t>(points.size()), cost_lo, cost_hi, rng);
  return Instance(MetricSpace::from_points(std::move(points)),
                  std::move(costs), std::move(clients));
}

Instance load_realworld_file(const std::string& path, double cost_lo,
                             double cost_hi, std::uint64_t seed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open realworld table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_realworld(buf.str(), cost_lo, cost_hi, seed);
}

}  // namespace flp
