#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "critlab/bubbles.hpp"
#include "critlab/constants.hpp"
#include "critlab/error.hpp"
#include "critlab/estimates.hpp"
#include "critlab/runner.hpp"
#include "critlab/solver.hpp"

namespace py = pybind11;
using namespace critlab;

namespace {

std::vector<std::vector<double>> profile(const FieldVector& u) {
  std::vector<std::vector<double>> out;
  for (const auto& c : u.components()) out.emplace_back(c.values().begin(), c.values().end());
  return out;
}

}  // namespace

PYBIND11_MODULE(_critlab, m) {
  m.doc() = "Coupled critical Schrödinger systems on a ball: levels, bounds and checks";
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<ProblemParams>(m, "ProblemParams")
      .def_readonly("d", &ProblemParams::d)
      .def_readonly("lambdas", &ProblemParams::lambdas)
      .def_readonly("beta", &ProblemParams::beta)
      .def_readonly("radius", &ProblemParams::radius);
  m.def("make_params", &make_params, py::arg("lambdas"), py::arg("beta"), py::arg("radius") = 1.0);

  py::class_<AdmissibilityReport>(m, "AdmissibilityReport")
      .def_readonly("lambda1", &AdmissibilityReport::lambda1)
      .def_readonly("lambda_star", &AdmissibilityReport::lambda_star)
      .def_readonly("window_low", &AdmissibilityReport::window_low)
      .def_readonly("window_high", &AdmissibilityReport::window_high)
      .def_readonly("admissible", &AdmissibilityReport::admissible);
  m.def("check_admissible", &check_admissible);
  m.def("sobolev_tilde", &sobolev_tilde);
  m.def("sobolev_tilde_power", &sobolev_tilde_power);
  m.def(
      "lambda_bounds",
      [](double radius, std::size_t intervals) {
        const auto b = lambda_bounds(radius, intervals);
        return py::dict(py::arg("lambda1") = b.lambda1, py::arg("lambda1_closed_form") = b.lambda1_closed_form,
                        py::arg("lambda_star") = b.lambda_star);
      },
      py::arg("radius") = 1.0, py::arg("intervals") = 2048);

  m.def(
      "pmax",
      [](const Matrix& beta, std::uint64_t seed) {
        const auto r = pmax(beta, seed);
        return py::make_tuple(r.value, r.argmax);
      },
      py::arg("beta"), py::arg("seed") = 0);
  m.def("limit_level", &limit_level);
  m.def(
      "expansion_report",
      [](const std::vector<double>& eps, double radius, std::size_t intervals) {
        const auto t = expansion_report(eps, make_grid(radius, intervals));
        return py::dict(py::arg("grad_slope") = t.grad_slope, py::arg("l2_slope") = t.l2_slope,
                        py::arg("l6_order") = t.l6_order, py::arg("reference") = t.reference);
      },
      py::arg("epsilons"), py::arg("radius") = 1.0, py::arg("intervals") = std::size_t{1} << 16);

  py::class_<SolveConfig>(m, "SolveConfig")
      .def(py::init<>())
      .def_readwrite("intervals", &SolveConfig::intervals)
      .def_readwrite("max_iterations", &SolveConfig::max_iterations)
      .def_readwrite("gradient_tolerance", &SolveConfig::gradient_tolerance)
      .def_readwrite("init", &SolveConfig::init)
      .def_readwrite("seed", &SolveConfig::seed);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("level", &SolveResult::level)
      .def_readonly("quotient", &SolveResult::quotient)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("status", &SolveResult::status)
      .def_readonly("regime", &SolveResult::regime)
      .def_readonly("semitrivial", &SolveResult::semitrivial)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("l6", &SolveResult::l6)
      .def_property_readonly("concentrated", [](const SolveResult& r) { return r.diagnostics.any(); })
      .def_property_readonly("nodes",
                             [](const SolveResult& r) {
                               const auto n = r.fields.grid()->nodes();
                               return std::vector<double>(n.begin(), n.end());
                             })
      .def_property_readonly("profile", [](const SolveResult& r) { return profile(r.fields); });

  m.def("solve_single", &solve_single, py::arg("params"), py::arg("component") = 0,
        py::arg("config") = SolveConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def("minimize_on_N", &minimize_on_N, py::arg("params"), py::arg("subset"), py::arg("config") = SolveConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("minimize_on_M", &minimize_on_M, py::arg("params"), py::arg("config") = SolveConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("name", &EstimateReport::name)
      .def_readonly("lhs", &EstimateReport::lhs)
      .def_readonly("rhs", &EstimateReport::rhs)
      .def_readonly("margin", &EstimateReport::margin)
      .def_readonly("tolerance", &EstimateReport::tolerance)
      .def_readonly("passed", &EstimateReport::pass)
      .def_readonly("notes", &EstimateReport::notes)
      .def_property_readonly("details", [](const EstimateReport& r) {
        py::dict d;
        for (const auto& [k, v] : r.details) d[py::str(k)] = v;
        return d;
      });

  py::class_<LevelOracle>(m, "LevelOracle")
      .def(py::init<ProblemParams, SolveConfig>(), py::arg("params"), py::arg("config") = SolveConfig{})
      .def("single_levels", &LevelOracle::single_levels, py::call_guard<py::gil_scoped_release>())
      .def(
          "run_check", [](LevelOracle& o, const std::string& name) { return run_check(name, o); },
          py::call_guard<py::gil_scoped_release>())
      .def("constants", [](LevelOracle& o) {
        const auto& c = o.constants();
        return py::dict(py::arg("cbar") = c.cbar, py::arg("k1") = c.k1, py::arg("k2") = c.k2,
                        py::arg("k3") = c.k3, py::arg("k4") = c.k4, py::arg("k") = c.k, py::arg("c1") = c.c1,
                        py::arg("c2") = c.c2, py::arg("c3") = c.c3, py::arg("delta") = c.delta,
                        py::arg("m") = c.m, py::arg("b_limit") = c.b_limit);
      });
  m.def("check_names", &check_names);

  m.def(
      "run_json",
      [](const std::string& config_json) {
        const RunConfig c = parse_run_config(config_json);
        std::ostringstream log;
        RunOutcome out;
        {
          py::gil_scoped_release release;
          out = run(c, log);
        }
        return py::make_tuple(out.exit_code, out.message, out.directory);
      },
      py::arg("config_json"));
}
