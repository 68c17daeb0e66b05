#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xigap/analytic.hpp"
#include "xigap/cli.hpp"
#include "xigap/error.hpp"
#include "xigap/functionals.hpp"
#include "xigap/optimize.hpp"
#include "xigap/serialize.hpp"
#include "xigap/zerofinder.hpp"
#include "xigap/zeta.hpp"

namespace py = pybind11;
using namespace xigap;

namespace {

// Results cross the boundary as the same documents the CLI writes.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

CoeffKind coeff_kind(const std::string& s) {
  if (s == "divisor") return CoeffKind::divisor;
  if (s == "moebius") return CoeffKind::moebius;
  fail(ErrorKind::validation, "kind must be divisor or moebius");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "xi' zero gaps: functionals, zero finder and optimiser";
  py::register_exception<Error>(m, "XigapError", PyExc_RuntimeError);

  m.def("zeta", [](std::complex<double> s, int order) { return zeta_em(s, order); }, py::arg("s"),
        py::arg("order") = 0);
  m.def("xi_log_derivative", [](std::complex<double> s) { return xi_log_derivative(s); }, py::arg("s"));
  m.def("g_detector", [](double t) { return g_detector(t); }, py::arg("t"));

  m.def(
      "h1_theorem1",
      [](double alpha, int r, const std::vector<double>& coeffs, const std::string& kind, double tol) {
        return to_py(to_json(h1_theorem1(alpha, r, PolyF(coeffs), coeff_kind(kind), tol)));
      },
      py::arg("alpha"), py::arg("r"), py::arg("coeffs"), py::arg("kind") = "divisor", py::arg("tol") = 1e-9);
  m.def(
      "h1_theorem2",
      [](double alpha, double c, double tol) { return to_py(to_json(h1_theorem2(alpha, c, tol))); },
      py::arg("alpha"), py::arg("c"), py::arg("tol") = 1e-10);
  m.def(
      "uv",
      [](double alpha, double tol) {
        const UVResult r = UV(alpha, tol);
        return std::pair{r.U, r.V};
      },
      py::arg("alpha"), py::arg("tol") = 1e-10);
  m.def("c_opt", [](double alpha) { return c_opt(alpha); }, py::arg("alpha"));

  m.def(
      "scan_zeros",
      [](const std::string& kind, double t_min, double t_max, double tol, double grid, int workers) {
        ScanOptions o;
        o.grid_step = grid;
        o.workers = workers;
        return scan_zeros(zero_kind_from_string(kind), t_min, t_max, tol, o).ordinates();
      },
      py::arg("kind"), py::arg("t_min"), py::arg("t_max"), py::arg("tol") = 1e-9, py::arg("grid") = 0.05,
      py::arg("workers") = 1);

  m.def(
      "optimize_theorem1",
      [](const std::string& direction, int r, int degree, int restarts, std::uint64_t seed, int workers) {
        Theorem1Options o;
        o.restarts = restarts;
        o.seed = seed;
        o.workers = workers;
        return to_py(to_json(optimize_theorem1(direction_from_string(direction), r, degree, o)));
      },
      py::arg("direction"), py::arg("r") = 2, py::arg("degree") = 2, py::arg("restarts") = 20,
      py::arg("seed") = 1, py::arg("workers") = 1);
  m.def(
      "optimize_theorem2",
      [](const std::string& direction) {
        return to_py(to_json(optimize_theorem2(direction_from_string(direction))));
      },
      py::arg("direction"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one xigap subcommand in-process; returns (exit code, stdout, stderr).");
}
