// Command-line front end: instance generation, single solves, parameter
// sweeps and density checks. Exit codes: 0 success, 2 invalid arguments,
// 3 I/O error, 4 generation failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flp/bench.hpp"
#include "flp/errors.hpp"
#include "flp/evaluation.hpp"
#include "flp/generators.hpp"
#include "flp/instance.hpp"
#include "flp/privacy.hpp"
#include "flp/solution.hpp"
#include "flp/solvers.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalidArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitGeneration = 4;

flp::ClientModel parse_client_model(const std::string& spec) {
  if (spec == "gauss") return flp::TruncatedGaussianModel{};
  if (spec.rfind("gauss:", 0) == 0) {
    flp::TruncatedGaussianModel g;
    if (std::sscanf(spec.c_str(), "gauss:%lf,%lf,%ld,%ld", &g.mean, &g.sd,
                    &g.lo, &g.hi) != 4) {
      throw flp::InvalidArgument("--clients: expected gauss:MEAN,SD,LO,HI");
    }
    return g;
  }
  if (spec.rfind("const:", 0) == 0) {
    try {
      return flp::ConstantModel{std::stoll(spec.substr(6))};
    } catch (const std::exception&) {
      throw flp::InvalidArgument("--clients: expected const:K with integer K");
    }
  }
  if (spec.rfind("bern:", 0) == 0) {
    try {
      return flp::BernoulliPresenceModel{
          flp::PresenceProb(std::stod(spec.substr(5))),
          flp::TruncatedGaussianModel{}};
    } catch (const flp::InvalidArgument&) {
      throw;
    } catch (const std::exception&) {
      throw flp::InvalidArgument("--clients: expected bern:P with real P");
    }
  }
  throw flp::InvalidArgument("--clients: unknown model '" + spec + "'");
}

std::pair<double, double> parse_range(const std::string& spec,
                                      const char* flag) {
  double lo = 0.0, hi = 0.0;
  if (std::sscanf(spec.c_str(), "%lf,%lf", &lo, &hi) != 2) {
    throw flp::InvalidArgument(std::string(flag) + ": expected LO,HI");
  }
  return {lo, hi};
}

json cost_report_json(const flp::CostReport& report) {
  json j = {{"facility_cost", report.cost.facility_cost},
            {"connection_cost", report.cost.connection_cost},
            {"total_cost", report.cost.total},
            {"opt_cost", report.opt},
            {"normalized_cost", report.normalized},
            {"failed", report.feasibility.any_failure},
            {"failed_facilities", report.feasibility.failed_facilities},
            {"worst_overload", report.feasibility.worst_overload}};
  if (report.bounds) {
    j["bounds"] = {{"mult_margin_factor", report.bounds->mult_margin_bound},
                   {"mult_reconnection_factor",
                    report.bounds->mult_reconn_bound},
                   {"additive_reconnection", report.bounds->additive_reconn_bound},
                   {"b_avg", report.bounds->b_avg}};
  }
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"FL-Linear solvers and benchmarks under local differential "
               "privacy"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* generate = app.add_subcommand("generate", "Generate an instance");
  std::string gen_process = "matern";
  flp::GeneratorConfig gen_cfg;
  std::string gen_clients = "gauss";
  std::string gen_cost_range = "0.1,0.3";
  std::string gen_out;
  bool gen_min_one = false;
  generate->add_option("--process", gen_process, "matern|poisson")
      ->check(CLI::IsMember({"matern", "poisson"}));
  generate->add_option("--n", gen_cfg.n, "expected location count");
  generate->add_option("--gamma", gen_cfg.gamma, "scaling parameter");
  generate->add_option("--delta-gen", gen_cfg.delta_gen, "cluster radius");
  generate->add_option("--clients", gen_clients,
                       "gauss | gauss:M,SD,LO,HI | const:K | bern:P");
  generate->add_option("--cost-range", gen_cost_range, "LO,HI");
  generate->add_option("--seed", gen_cfg.seed, "generator seed");
  generate->add_flag("--min-one", gen_min_one,
                     "clamp sampled client counts to >= 1");
  generate->add_option("--out", gen_out, "output instance path")->required();

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  std::string solve_instance;
  std::string solve_algo = "optimal";
  double solve_epsilon = 0.1, solve_alpha = 0.1, solve_delta = 0.2;
  std::uint64_t solve_seed = 0;
  std::string solve_out;
  solve->add_option("--instance", solve_instance, "instance path")->required();
  solve->add_option("--algo", solve_algo, "optimal|margin|reconnection")
      ->check(CLI::IsMember({"optimal", "margin", "reconnection"}));
  solve->add_option("--epsilon", solve_epsilon, "privacy budget");
  solve->add_option("--alpha", solve_alpha, "failure probability");
  solve->add_option("--delta", solve_delta, "reconnection radius");
  solve->add_option("--seed", solve_seed, "noise seed");
  solve->add_option("--out", solve_out, "solution output path");

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_kind = "single";
  std::string sweep_grid = "0,0,1";
  int sweep_trials = 1;
  std::string sweep_process = "matern";
  flp::GeneratorConfig sweep_gen;
  std::string sweep_clients = "gauss";
  std::string sweep_cost_range = "0.1,0.3";
  bool sweep_min_one = false;
  double sweep_epsilon = 0.1, sweep_alpha = 0.1, sweep_delta = 0.2;
  std::string sweep_algos = "optimal,margin,reconnection";
  std::uint64_t sweep_seed = 0;
  int sweep_threads = 1;
  bool sweep_timing = false;
  std::string sweep_out;
  sweep->add_option("--kind", sweep_kind, "delta|epsilon|n|bavg|single")
      ->check(CLI::IsMember({"delta", "epsilon", "n", "bavg", "single"}));
  sweep->add_option("--grid", sweep_grid, "START,STOP,STEP");
  sweep->add_option("--trials", sweep_trials, "trials per grid point");
  sweep->add_option("--process", sweep_process, "matern|poisson")
      ->check(CLI::IsMember({"matern", "poisson"}));
  sweep->add_option("--n", sweep_gen.n, "expected location count");
  sweep->add_option("--gamma", sweep_gen.gamma, "scaling parameter");
  sweep->add_option("--delta-gen", sweep_gen.delta_gen, "cluster radius");
  sweep->add_option("--clients", sweep_clients, "client model");
  sweep->add_option("--cost-range", sweep_cost_range, "LO,HI");
  sweep->add_flag("--min-one", sweep_min_one, "clamp clients to >= 1");
  sweep->add_option("--epsilon", sweep_epsilon, "privacy budget");
  sweep->add_option("--alpha", sweep_alpha, "failure probability");
  sweep->add_option("--delta", sweep_delta, "reconnection radius");
  sweep->add_option("--algos", sweep_algos, "comma list of algorithms");
  sweep->add_option("--seed", sweep_seed, "master seed");
  sweep->add_option("--threads", sweep_threads, "worker threads");
  sweep->add_flag("--timing", sweep_timing,
                  "measure per-solve runtime (breaks byte-identical output)");
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  // ---- oracle ----
  auto* oracle = app.add_subcommand(
      "oracle", "Brute-force optimum for tiny instances (n <= 8)");
  std::string oracle_instance;
  oracle->add_option("--instance", oracle_instance, "instance path")
      ->required();

  // ---- check-density ----
  auto* density = app.add_subcommand(
      "check-density", "Evaluate the ball-occupancy assumption");
  std::string density_instance;
  double density_delta = 0.2, density_gamma = 2.0;
  density->add_option("--instance", density_instance, "instance path")
      ->required();
  density->add_option("--delta", density_delta, "ball radius")->required();
  density->add_option("--gamma", density_gamma, "scaling parameter")
      ->required();

  // ---- import ----
  auto* import_cmd = app.add_subcommand(
      "import", "Convert an id,x,y,clients table into an instance");
  std::string import_csv, import_out;
  std::string import_cost_range = "0.1,0.3";
  std::uint64_t import_seed = 0;
  import_cmd->add_option("--csv", import_csv, "input table path")->required();
  import_cmd->add_option("--cost-range", import_cost_range, "LO,HI");
  import_cmd->add_option("--seed", import_seed, "facility cost seed");
  import_cmd->add_option("--out", import_out, "output instance path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidArgs;
  }

  if (generate->parsed()) {
    gen_cfg.client_model = parse_client_model(gen_clients);
    std::tie(gen_cfg.cost_lo, gen_cfg.cost_hi) =
        parse_range(gen_cost_range, "--cost-range");
    gen_cfg.min_one = gen_min_one;
    flp::Rng rng(gen_cfg.seed);
    const flp::Instance inst =
        flp::generate(gen_process == "matern" ? flp::PointProcess::kMatern
                                              : flp::PointProcess::kPoisson,
                      gen_cfg, rng);
    flp::save_instance_file(inst, gen_out);
    std::cout << "generated " << inst.size() << " locations -> " << gen_out
              << "\n";
    return kExitOk;
  }

  if (solve->parsed()) {
    const flp::Instance inst = flp::load_instance_file(solve_instance);
    const flp::Solution optimal = flp::solve_optimal(inst);
    const double opt = flp::total_cost(inst, optimal).total;

    flp::Solution sol;
    std::optional<flp::BoundReport> bounds;
    if (solve_algo == "optimal") {
      sol = optimal;
    } else {
      const flp::PrivacyParams params(solve_epsilon, solve_alpha);
      flp::Rng rng(solve_seed);
      if (solve_algo == "margin") {
        sol = flp::solve_ldp_margin(inst, params, rng);
      } else {
        sol = flp::solve_ldp_reconnection(
            inst, flp::SolveParams(params, solve_delta), rng);
      }
      if (inst.size() >= 2) {
        bounds = flp::compute_bounds(inst.size(), params, /*gamma=*/2.0,
                                     solve_delta, inst.average_clients());
      }
    }
    const flp::CostReport report =
        flp::evaluate_solution(inst, sol, opt, bounds);
    std::cout << cost_report_json(report).dump(2) << "\n";
    if (!solve_out.empty()) flp::save_solution_file(sol, solve_out);
    return kExitOk;
  }

  if (sweep->parsed()) {
    flp::SweepConfig cfg;
    if (sweep_kind == "delta") cfg.kind = flp::SweepKind::kDelta;
    else if (sweep_kind == "epsilon") cfg.kind = flp::SweepKind::kEpsilon;
    else if (sweep_kind == "n") cfg.kind = flp::SweepKind::kN;
    else if (sweep_kind == "bavg") cfg.kind = flp::SweepKind::kBAvg;
    else cfg.kind = flp::SweepKind::kSingle;
    {
      double start = 0, stop = 0, step = 1;
      if (std::sscanf(sweep_grid.c_str(), "%lf,%lf,%lf", &start, &stop,
                      &step) != 3) {
        throw flp::InvalidArgument("--grid: expected START,STOP,STEP");
      }
      cfg.grid = {start, stop, step};
    }
    cfg.trials_per_point = sweep_trials;
    cfg.process = sweep_process == "matern" ? flp::PointProcess::kMatern
                                            : flp::PointProcess::kPoisson;
    sweep_gen.client_model = parse_client_model(sweep_clients);
    std::tie(sweep_gen.cost_lo, sweep_gen.cost_hi) =
        parse_range(sweep_cost_range, "--cost-range");
    sweep_gen.min_one = sweep_min_one;
    cfg.generator = sweep_gen;
    cfg.solve = flp::SolveParams(flp::PrivacyParams(sweep_epsilon, sweep_alpha),
                                 sweep_delta);
    cfg.algorithms.clear();
    std::istringstream algos(sweep_algos);
    std::string name;
    while (std::getline(algos, name, ',')) {
      if (name == "optimal") cfg.algorithms.push_back(flp::Algorithm::kOptimal);
      else if (name == "margin")
        cfg.algorithms.push_back(flp::Algorithm::kMargin);
      else if (name == "reconnection")
        cfg.algorithms.push_back(flp::Algorithm::kReconnection);
      else
        throw flp::InvalidArgument("--algos: unknown algorithm '" + name +
                                   "'");
    }
    cfg.master_seed = sweep_seed;
    cfg.threads = sweep_threads;
    cfg.measure_runtime = sweep_timing;
    cfg.output_path = sweep_out;

    const std::vector<flp::ResultRow> rows = flp::run_sweep(cfg);
    flp::emit_csv(rows, cfg.output_path);
    std::cout << "wrote " << rows.size() << " rows -> " << cfg.output_path
              << "\n";
    return kExitOk;
  }

  if (oracle->parsed()) {
    const flp::Instance inst = flp::load_instance_file(oracle_instance);
    const flp::CostBreakdown best = flp::brute_force_oracle(inst);
    json j = {{"facility_cost", best.facility_cost},
              {"connection_cost", best.connection_cost},
              {"total_cost", best.total}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (density->parsed()) {
    const flp::Instance inst = flp::load_instance_file(density_instance);
    const flp::DensityReport report =
        flp::density_check(inst, density_delta, density_gamma);
    json j = {{"threshold", report.threshold},
              {"satisfied_count", report.satisfied_count},
              {"n", inst.size()},
              {"fraction", report.fraction}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (import_cmd->parsed()) {
    const auto [lo, hi] = parse_range(import_cost_range, "--cost-range");
    const flp::Instance inst =
        flp::load_realworld_file(import_csv, lo, hi, import_seed);
    flp::save_instance_file(inst, import_out);
    std::cout << "imported " << inst.size() << " locations -> " << import_out
              << "\n";
    return kExitOk;
  }

  return kExitInvalidArgs;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const flp::GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const flp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const flp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidArgs;
  }
}
