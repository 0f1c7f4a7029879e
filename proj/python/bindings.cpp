#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heun/cli.hpp"
#include "heun/error.hpp"
#include "heun/floquet.hpp"
#include "heun/quasipoly.hpp"
#include "heun/shooting.hpp"
#include "heun/version.hpp"
#include "heun/wavefunction.hpp"

namespace py = pybind11;
using namespace heun;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bound states of the z^-4 + Coulomb radial problem";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "HeunError");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());

  py::class_<ProblemParams>(m, "ProblemParams")
      .def(py::init([](double A, double Z, int l) { return ProblemParams{A, Z, l}; }),
           py::arg("A"), py::arg("Z") = 1.0, py::arg("l") = 0)
      .def_readwrite("A", &ProblemParams::A)
      .def_readwrite("Z", &ProblemParams::Z)
      .def_readwrite("l", &ProblemParams::l)
      .def("__repr__", [](const ProblemParams& p) {
        std::ostringstream s;
        s << "ProblemParams(A=" << p.A << ", Z=" << p.Z << ", l=" << p.l << ")";
        return s.str();
      });

  py::class_<BoundState>(m, "BoundState")
      .def_readonly("E", &BoundState::E)
      .def_readonly("n", &BoundState::n)
      .def_readonly("l", &BoundState::l)
      .def_readonly("mismatch", &BoundState::mismatch)
      .def_property_readonly("z", [](const BoundState& b) {
        std::vector<double> z;
        for (const auto& s : b.wave_samples) z.push_back(s.z);
        return z;
      })
      .def_property_readonly("w", [](const BoundState& b) {
        std::vector<double> w;
        for (const auto& s : b.wave_samples) w.push_back(s.w);
        return w;
      });

  py::class_<IndexPair>(m, "IndexPair")
      .def_readonly("nu1", &IndexPair::nu1)
      .def_readonly("nu2", &IndexPair::nu2)
      .def_readonly("residual", &IndexPair::residual);

  py::class_<FloquetSolution>(m, "FloquetSolution")
      .def_readonly("nu", &FloquetSolution::nu)
      .def_readonly("N", &FloquetSolution::N)
      .def_readonly("coefficients", &FloquetSolution::coefficients)
      .def("c", &FloquetSolution::c, py::arg("n"));

  py::class_<ConnectionResult>(m, "ConnectionResult")
      .def_readonly("E", &ConnectionResult::E)
      .def_readonly("zeta1", &ConnectionResult::zeta1)
      .def_readonly("zeta2", &ConnectionResult::zeta2)
      .def_readonly("a0", &ConnectionResult::a0)
      .def_readonly("b0", &ConnectionResult::b0)
      .def_readonly("z_far", &ConnectionResult::z_far)
      .def_readonly("z_near", &ConnectionResult::z_near)
      .def_readonly("characteristic", &ConnectionResult::characteristic)
      .def_readonly("zeta_residual", &ConnectionResult::zeta_residual)
      .def_readonly("nu1", &ConnectionResult::nu1)
      .def_readonly("nu2", &ConnectionResult::nu2);

  py::class_<Wavefunction>(m, "Wavefunction")
      .def_readonly("E", &Wavefunction::E)
      .def_readonly("norm", &Wavefunction::norm)
      .def_property_readonly("z", [](const Wavefunction& f) {
        std::vector<double> z;
        for (const auto& s : f.samples) z.push_back(s.z);
        return z;
      })
      .def_property_readonly("w", [](const Wavefunction& f) {
        std::vector<double> w;
        for (const auto& s : f.samples) w.push_back(s.w);
        return w;
      })
      .def_property_readonly("source", [](const Wavefunction& f) {
        std::vector<std::string> src;
        for (const auto& s : f.samples) src.push_back(to_string(s.source));
        return src;
      });

  py::class_<QuasiPolyResult>(m, "QuasiPolyResult")
      .def_readonly("beta_roots", &QuasiPolyResult::beta_roots)
      .def_readonly("E", &QuasiPolyResult::E)
      .def_readonly("A_values", &QuasiPolyResult::A_values)
      .def_readonly("xi", &QuasiPolyResult::xi)
      .def_readonly("rejected_roots", &QuasiPolyResult::rejected_roots)
      .def_readonly("cross_check", &QuasiPolyResult::cross_check)
      .def_readonly("note", &QuasiPolyResult::note);

  m.def("find_energy", [](const ProblemParams& p, int n) { return find_energy(p, n); },
        py::arg("params"), py::arg("n"), py::call_guard<py::gil_scoped_release>(),
        "Eigenvalue with n nodes by shooting.");
  m.def("find_energy_floquet",
        [](const ProblemParams& p, int n) { return find_energy_floquet(p, n); },
        py::arg("params"), py::arg("n"), py::call_guard<py::gil_scoped_release>(),
        "Eigenvalue with n nodes from the Floquet connection.");
  m.def("find_indices", [](const ProblemParams& p, double E, int N) { return find_indices(E, p, N); },
        py::arg("params"), py::arg("E"), py::arg("N") = 0);
  m.def("laurent_coefficients",
        [](const ProblemParams& p, double E, std::complex<double> nu, int N) {
          return laurent_coefficients(nu, E, p, N);
        },
        py::arg("params"), py::arg("E"), py::arg("nu"), py::arg("N"));
  m.def("sample_wavefunction",
        [](const ProblemParams& p, int n, const std::vector<double>& zs) {
          return sample_wavefunction(p, n, zs);
        },
        py::arg("params"), py::arg("n"), py::arg("z"), py::call_guard<py::gil_scoped_release>());
  m.def("solve_quasipoly",
        [](int p, int l, double Z) { return solve_quasipoly({p, l, Z}); },
        py::arg("p"), py::arg("l"), py::arg("Z") = 1.0);
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::vector<const char*> argv{"heun_spectra"};
          for (const auto& a : args) argv.push_back(a.c_str());
          std::ostringstream out, err;
          const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line interface; returns (exit_code, stdout, stderr).");
}
