// Python bindings for the core operations: instance construction and I/O,
// generators, the privacy primitives, the three solvers and the evaluation
// helpers. Capacities cross the boundary as {location: capacity} dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <variant>

#include "flp/bench.hpp"
#include "flp/errors.hpp"
#include "flp/evaluation.hpp"
#include "flp/generators.hpp"
#include "flp/instance.hpp"
#include "flp/privacy.hpp"
#include "flp/rng.hpp"
#include "flp/solution.hpp"
#include "flp/solvers.hpp"

namespace py = pybind11;

namespace {

std::vector<flp::Point2> to_points(
    const std::vector<std::pair<double, double>>& coords) {
  std::vector<flp::Point2> pts;
  pts.reserve(coords.size());
  for (const auto& [x, y] : coords) pts.push_back({x, y});
  return pts;
}

flp::ClientModel make_client_model(const std::string& kind, double mean,
                                   double sd, std::int64_t lo, std::int64_t hi,
                                   std::int64_t constant, double presence_p) {
  if (kind == "gauss") return flp::TruncatedGaussianModel{mean, sd, lo, hi};
  if (kind == "const") return flp::ConstantModel{constant};
  if (kind == "bern") {
    return flp::BernoulliPresenceModel{
        flp::PresenceProb(presence_p),
        flp::TruncatedGaussianModel{mean, sd, lo, hi}};
  }
  throw flp::InvalidArgument("client model kind must be gauss|const|bern");
}

py::dict capacities_dict(const flp::Solution& sol) {
  py::dict out;
  for (const flp::OpenFacility& f : sol.facilities) {
    out[py::int_(f.location)] = f.capacity;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(flp_py, m) {
  m.doc() = "Facility location with linear facility costs under local "
            "differential privacy";

  py::register_exception<flp::Error>(m, "FlpError");

  py::class_<flp::Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next_double", &flp::Rng::next_double)
      .def("uniform", &flp::Rng::uniform, py::arg("lo"), py::arg("hi"))
      .def("normal", &flp::Rng::normal, py::arg("mean"), py::arg("stddev"))
      .def("poisson", &flp::Rng::poisson, py::arg("lam"));

  m.def("derive_seed", &flp::derive_seed, py::arg("master"), py::arg("stream"),
        py::arg("index"));

  py::class_<flp::MetricSpace>(m, "MetricSpace")
      .def_static(
          "from_points",
          [](const std::vector<std::pair<double, double>>& coords) {
            return flp::MetricSpace::from_points(to_points(coords));
          },
          py::arg("points"))
      .def_static("from_matrix", &flp::MetricSpace::from_matrix, py::arg("n"),
                  py::arg("distances"))
      .def_property_readonly("size", &flp::MetricSpace::size)
      .def("distance", &flp::MetricSpace::operator(), py::arg("u"),
           py::arg("v"))
      .def("ball", &flp::MetricSpace::ball, py::arg("center"),
           py::arg("radius"));

  m.def(
      "build_metric",
      [](const std::vector<std::pair<double, double>>& coords) {
        return flp::build_metric(to_points(coords));
      },
      py::arg("points"));

  py::class_<flp::Instance>(m, "Instance")
      .def(py::init<flp::MetricSpace, std::vector<double>,
                    std::vector<std::int64_t>>(),
           py::arg("metric"), py::arg("facility_costs"), py::arg("clients"))
      .def_property_readonly("size", &flp::Instance::size)
      .def_property_readonly("metric", &flp::Instance::metric)
      .def_property_readonly("facility_costs", &flp::Instance::facility_costs)
      .def_property_readonly("clients", &flp::Instance::clients)
      .def_property_readonly("b_avg", &flp::Instance::average_clients);

  m.def("load_instance", &flp::load_instance, py::arg("bytes"));
  m.def("save_instance", &flp::save_instance, py::arg("instance"));
  m.def("load_instance_file", &flp::load_instance_file, py::arg("path"));
  m.def("save_instance_file", &flp::save_instance_file, py::arg("instance"),
        py::arg("path"));

  py::class_<flp::GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init([](std::int64_t n, double gamma, double delta_gen,
                       double cost_lo, double cost_hi, std::uint64_t seed,
                       bool min_one, const std::string& client_kind,
                       double mean, double sd, std::int64_t lo,
                       std::int64_t hi, std::int64_t constant,
                       double presence_p) {
             flp::GeneratorConfig cfg;
             cfg.n = n;
             cfg.gamma = gamma;
             cfg.delta_gen = delta_gen;
             cfg.cost_lo = cost_lo;
             cfg.cost_hi = cost_hi;
             cfg.seed = seed;
             cfg.min_one = min_one;
             cfg.client_model = make_client_model(
                 client_kind, mean, sd, lo, hi, constant, presence_p);
             cfg.validate();
             return cfg;
           }),
           py::arg("n") = 1000, py::arg("gamma") = 2.0,
           py::arg("delta_gen") = 0.2, py::arg("cost_lo") = 0.1,
           py::arg("cost_hi") = 0.3, py::arg("seed") = 0,
           py::arg("min_one") = false, py::arg("client_kind") = "gauss",
           py::arg("client_mean") = 2.5, py::arg("client_sd") = 1.5,
           py::arg("client_lo") = 0, py::arg("client_hi") = 8,
           py::arg("client_const") = 1, py::arg("presence_p") = 1.0)
      .def_readwrite("n", &flp::GeneratorConfig::n)
      .def_readwrite("gamma", &flp::GeneratorConfig::gamma)
      .def_readwrite("delta_gen", &flp::GeneratorConfig::delta_gen)
      .def_readwrite("seed", &flp::GeneratorConfig::seed);

  py::class_<flp::MaternIntensities>(m, "MaternIntensities")
      .def_readonly("lambda_centers", &flp::MaternIntensities::lambda_centers)
      .def_readonly("lambda_daughter",
                    &flp::MaternIntensities::lambda_daughter);
  m.def("matern_intensities", &flp::matern_intensities, py::arg("config"));

  m.def("generate_matern", &flp::generate_matern, py::arg("config"),
        py::arg("rng"));
  m.def("generate_poisson", &flp::generate_poisson, py::arg("config"),
        py::arg("rng"));

  py::class_<flp::DensityReport>(m, "DensityReport")
      .def_readonly("threshold", &flp::DensityReport::threshold)
      .def_readonly("ball_sizes", &flp::DensityReport::ball_sizes)
      .def_readonly("satisfied", &flp::DensityReport::satisfied)
      .def_readonly("satisfied_count", &flp::DensityReport::satisfied_count)
      .def_readonly("fraction", &flp::DensityReport::fraction);
  m.def("density_check", &flp::density_check, py::arg("instance"),
        py::arg("delta"), py::arg("gamma"));

  py::class_<flp::PrivacyParams>(m, "PrivacyParams")
      .def(py::init<double, double>(), py::arg("epsilon"), py::arg("alpha"))
      .def_readonly("epsilon", &flp::PrivacyParams::epsilon)
      .def_readonly("alpha", &flp::PrivacyParams::alpha);

  py::class_<flp::NoisyCounts>(m, "NoisyCounts")
      .def_readonly("values", &flp::NoisyCounts::values)
      .def_readonly("epsilon_used", &flp::NoisyCounts::epsilon_used);

  m.def("laplace_sample", &flp::laplace_sample, py::arg("scale"),
        py::arg("rng"));
  m.def("perturb_counts", &flp::perturb_counts, py::arg("clients"),
        py::arg("params"), py::arg("rng"));
  m.def("margin", &flp::margin, py::arg("k"), py::arg("params"), py::arg("n"));
  m.def("laplace_sum_tail_check", &flp::laplace_sum_tail_check, py::arg("k"),
        py::arg("scale"), py::arg("beta"), py::arg("trials"), py::arg("rng"));

  py::class_<flp::SolveParams>(m, "SolveParams")
      .def(py::init<flp::PrivacyParams, double>(), py::arg("privacy"),
           py::arg("delta"))
      .def_readonly("privacy", &flp::SolveParams::privacy)
      .def_readonly("delta", &flp::SolveParams::delta);

  py::class_<flp::FacilityTrace>(m, "FacilityTrace")
      .def_readonly("facility", &flp::FacilityTrace::facility)
      .def_readonly("connected", &flp::FacilityTrace::connected)
      .def_readonly("noisy_load", &flp::FacilityTrace::noisy_load)
      .def_readonly("margin", &flp::FacilityTrace::margin)
      .def_readonly("clamped", &flp::FacilityTrace::clamped);

  py::class_<flp::Solution>(m, "Solution")
      .def_readonly("assignment", &flp::Solution::assignment)
      .def_readonly("trace", &flp::Solution::trace)
      .def_readonly("noise_draws", &flp::Solution::noise_draws)
      .def_property_readonly("capacities", &capacities_dict)
      .def("is_open", &flp::Solution::is_open, py::arg("location"));

  m.def("save_solution", &flp::save_solution, py::arg("solution"));

  m.def("optimal_assignment", &flp::optimal_assignment, py::arg("instance"));
  m.def("marked_set", &flp::marked_set, py::arg("assignment"));
  m.def("solve_optimal", &flp::solve_optimal, py::arg("instance"));
  m.def(
      "solve_ldp_margin",
      [](const flp::Instance& inst, const flp::PrivacyParams& params,
         flp::Rng& rng) { return flp::solve_ldp_margin(inst, params, rng); },
      py::arg("instance"), py::arg("params"), py::arg("rng"));
  m.def(
      "solve_ldp_margin_with_counts",
      [](const flp::Instance& inst, const flp::PrivacyParams& params,
         const flp::NoisyCounts& noisy) {
        return flp::solve_ldp_margin(inst, params, noisy);
      },
      py::arg("instance"), py::arg("params"), py::arg("noisy"));
  m.def(
      "solve_ldp_reconnection",
      [](const flp::Instance& inst, const flp::SolveParams& params,
         flp::Rng& rng) {
        return flp::solve_ldp_reconnection(inst, params, rng);
      },
      py::arg("instance"), py::arg("params"), py::arg("rng"));
  m.def(
      "solve_ldp_reconnection_with_counts",
      [](const flp::Instance& inst, const flp::SolveParams& params,
         const flp::NoisyCounts& noisy) {
        return flp::solve_ldp_reconnection(inst, params, noisy);
      },
      py::arg("instance"), py::arg("params"), py::arg("noisy"));

  py::class_<flp::ConflictGraph>(m, "ConflictGraph")
      .def_readonly("nodes", &flp::ConflictGraph::nodes)
      .def_readonly("adj", &flp::ConflictGraph::adj)
      .def_readonly("edge_count", &flp::ConflictGraph::edge_count);
  m.def("build_conflict_graph", &flp::build_conflict_graph,
        py::arg("instance"), py::arg("marked"), py::arg("delta"));

  py::class_<flp::IndependentSetResult>(m, "IndependentSetResult")
      .def_readonly("chosen", &flp::IndependentSetResult::chosen);
  m.def("greedy_mis", &flp::greedy_mis, py::arg("graph"),
        py::arg("facility_costs"));
  m.def("reconnect", &flp::reconnect, py::arg("instance"), py::arg("chosen"),
        py::arg("delta"));

  py::class_<flp::CostBreakdown>(m, "CostBreakdown")
      .def_readonly("facility_cost", &flp::CostBreakdown::facility_cost)
      .def_readonly("connection_cost", &flp::CostBreakdown::connection_cost)
      .def_readonly("total", &flp::CostBreakdown::total);

  m.def("brute_force_oracle", &flp::brute_force_oracle, py::arg("instance"));
  m.def("total_cost", &flp::total_cost, py::arg("instance"),
        py::arg("solution"));

  py::class_<flp::FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("failed_facilities",
                    &flp::FeasibilityReport::failed_facilities)
      .def_readonly("any_failure", &flp::FeasibilityReport::any_failure)
      .def_readonly("worst_overload", &flp::FeasibilityReport::worst_overload);
  m.def("check_capacities", &flp::check_capacities, py::arg("instance"),
        py::arg("solution"));

  m.def("normalized_cost", &flp::normalized_cost, py::arg("cost"),
        py::arg("opt"));
  m.def("bound_margin", &flp::bound_margin, py::arg("n"), py::arg("params"),
        py::arg("opt"));

  py::class_<flp::ReconnBound>(m, "ReconnBound")
      .def_readonly("mult", &flp::ReconnBound::mult)
      .def_readonly("additive", &flp::ReconnBound::additive);
  m.def("bound_reconnection", &flp::bound_reconnection, py::arg("n"),
        py::arg("params"), py::arg("gamma"), py::arg("delta"),
        py::arg("b_avg"), py::arg("opt"));

  m.def("load_realworld", &flp::load_realworld, py::arg("bytes"),
        py::arg("cost_lo"), py::arg("cost_hi"), py::arg("seed"));

  m.attr("__version__") = "1.0.0";
}
