#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pulsetrain/majorana.hpp"
#include "pulsetrain/morris_shore.hpp"
#include "pulsetrain/oracle.hpp"
#include "pulsetrain/tomography.hpp"

namespace py = pybind11;
using namespace pulsetrain;

PYBIND11_MODULE(_pulsetrain, m) {
  m.doc() = "Pulse-train propagators of Majorana and Morris-Shore systems";

  py::register_exception<DegenerateAngleError>(m, "DegenerateAngleError");
  py::register_exception<NonIdentifiableError>(m, "NonIdentifiableError");

  py::class_<PulseShape>(m, "PulseShape")
      .def_static("rectangular", &PulseShape::rectangular, py::arg("peak_rabi"),
                  py::arg("duration"), py::arg("delta0") = 0.0,
                  py::arg("chirp") = 0.0)
      .def_static("sin_squared", &PulseShape::sin_squared, py::arg("peak_rabi"),
                  py::arg("duration"), py::arg("delta0") = 0.0,
                  py::arg("chirp") = 0.0)
      .def_static("gaussian", &PulseShape::gaussian, py::arg("peak_rabi"),
                  py::arg("duration"), py::arg("center"), py::arg("width"),
                  py::arg("delta0") = 0.0, py::arg("chirp") = 0.0)
      .def_static("sampled", &PulseShape::sampled, py::arg("peak_rabi"),
                  py::arg("envelope_samples"), py::arg("duration"),
                  py::arg("delta0") = 0.0)
      .def_readwrite("grid_steps", &PulseShape::grid_steps)
      .def_readonly("duration", &PulseShape::duration);

  m.def("evaluate", &evaluate, py::arg("pulse"), py::arg("t"));
  m.def("accumulated_detuning", &accumulated_detuning);
  m.def("pulse_area", &pulse_area);

  py::class_<CKPair>(m, "CKPair")
      .def(py::init<Complex, Complex>(), py::arg("a"), py::arg("b"))
      .def_property_readonly("a", &CKPair::a)
      .def_property_readonly("b", &CKPair::b)
      .def("matrix", &CKPair::matrix)
      .def("__repr__", [](const CKPair& ck) {
        return "CKPair(a=" + std::to_string(ck.a().real()) + "+" +
               std::to_string(ck.a().imag()) + "j, b=" +
               std::to_string(ck.b().real()) + "+" +
               std::to_string(ck.b().imag()) + "j)";
      });

  py::class_<MSPairSolution>(m, "MSPairSolution")
      .def_readonly("ck", &MSPairSolution::ck)
      .def_readonly("delta", &MSPairSolution::delta)
      .def("reassemble", &MSPairSolution::reassemble);

  m.def("solve_traceless", &solve_traceless);
  m.def("solve_ms_pair", &solve_ms_pair, py::arg("lambda_m"), py::arg("pulse"));
  m.def("su2_power", &su2_power, py::arg("ck"), py::arg("n"));
  m.def("power_angle",
        [](const CKPair& ck) { return power_angle(ck).theta; });

  m.def("build_hamiltonian", &build_hamiltonian, py::arg("m_states"),
        py::arg("rabi"), py::arg("detuning"));
  m.def("wigner_element", &wigner_element, py::arg("ck"), py::arg("m_states"),
        py::arg("k"), py::arg("l"));
  m.def("propagator_from_ck",
        [](const CKPair& ck, int m_states) {
          return propagator_from_ck(ck, m_states).matrix;
        },
        py::arg("ck"), py::arg("m_states"));
  m.def("npass_propagator",
        [](const CKPair& ck, int m_states, int n) {
          return npass_propagator(ck, m_states, n).matrix;
        },
        py::arg("ck"), py::arg("m_states"), py::arg("n"));
  m.def("npass_via_diagonalization",
        [](const CKPair& ck, int m_states, int n) {
          return npass_via_diagonalization(ck, m_states, n).matrix;
        },
        py::arg("ck"), py::arg("m_states"), py::arg("n"));
  m.def("three_state_probabilities", &three_state_probabilities,
        py::arg("theta"), py::arg("n"));

  py::class_<MSDecomposition>(m, "MSDecomposition")
      .def_readonly("s_l", &MSDecomposition::s_l)
      .def_readonly("s_m", &MSDecomposition::s_m)
      .def_readonly("lambdas", &MSDecomposition::lambdas)
      .def_readonly("dark_count", &MSDecomposition::dark_count)
      .def("rank", &MSDecomposition::rank);
  m.def("decompose", &decompose);
  m.def("single_pass",
        [](const Eigen::MatrixXcd& omega, const PulseShape& pulse) {
          return single_pass(MSSystem{omega, pulse}).matrix;
        },
        py::arg("omega"), py::arg("pulse"));
  m.def("multi_pass",
        [](const Eigen::MatrixXcd& omega, const PulseShape& pulse, int n) {
          return multi_pass(MSSystem{omega, pulse}, n).matrix;
        },
        py::arg("omega"), py::arg("pulse"), py::arg("n"));
  m.def("multipod_npass", &multipod_npass, py::arg("omegas"), py::arg("ck"),
        py::arg("delta"), py::arg("n"));
  m.def("lambda_npass", &lambda_npass, py::arg("omega1"), py::arg("omega2"),
        py::arg("ck"), py::arg("delta"), py::arg("n"));
  m.def("tripod_npass", &tripod_npass, py::arg("omega1"), py::arg("omega2"),
        py::arg("omega3"), py::arg("ck"), py::arg("delta"), py::arg("n"));
  m.def("dark_basis", &dark_basis);

  m.def("matrix_power", &oracle::matrix_power, py::arg("u"), py::arg("n"));
  m.def("unitarity_defect", &oracle::unitarity_defect);

  py::enum_<SystemKind>(m, "SystemKind")
      .value("TwoState", SystemKind::TwoState)
      .value("Majorana", SystemKind::Majorana)
      .value("Multipod", SystemKind::Multipod);
  py::class_<AmplificationModel>(m, "AmplificationModel")
      .def(py::init([](SystemKind kind, int size, double target_theta) {
             return AmplificationModel{kind, size, target_theta};
           }),
           py::arg("kind"), py::arg("size"), py::arg("target_theta"))
      .def_readwrite("kind", &AmplificationModel::kind)
      .def_readwrite("size", &AmplificationModel::size)
      .def_readwrite("target_theta", &AmplificationModel::target_theta);
  py::class_<MeasurementSeries>(m, "MeasurementSeries")
      .def_readonly("n_values", &MeasurementSeries::n_values)
      .def_readonly("populations", &MeasurementSeries::populations)
      .def_readonly("shots", &MeasurementSeries::shots);
  m.def("model_population", &model_population, py::arg("model"),
        py::arg("theta"), py::arg("n"));
  m.def("amplified_series", &amplified_series, py::arg("model"),
        py::arg("epsilon"), py::arg("n_values"),
        py::arg("shots") = std::nullopt, py::arg("seed") = 0);
  m.def("estimate_error", &estimate_error, py::arg("model"), py::arg("series"));
}
