#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cespdc/bogoliubov.hpp"
#include "cespdc/comb.hpp"
#include "cespdc/core_params.hpp"
#include "cespdc/oracle.hpp"
#include "cespdc/single_mode.hpp"
#include "cespdc/spectra.hpp"
#include "cespdc/verify.hpp"

namespace py = pybind11;
using namespace cespdc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Correlation engine for sub-threshold cavity-enhanced SPDC";

  py::register_exception<ThresholdError>(m, "ThresholdError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                           PyExc_RuntimeError);

  py::class_<CavityParams>(m, "CavityParams")
      .def_property_readonly("r1", &CavityParams::r1)
      .def_property_readonly("r2", &CavityParams::r2)
      .def_property_readonly("t1", &CavityParams::t1)
      .def_property_readonly("t2", &CavityParams::t2)
      .def_property_readonly("tau", &CavityParams::tau)
      .def_property_readonly("roundtrip_amplitude",
                             &CavityParams::roundtrip_amplitude)
      .def("__repr__", [](const CavityParams& c) {
        return "CavityParams(r1=" + std::to_string(c.r1()) +
               ", r2=" + std::to_string(c.r2()) +
               ", tau=" + std::to_string(c.tau()) + ")";
      });
  m.def("make_cavity", &make_cavity, py::arg("r1"), py::arg("r2"),
        py::arg("tau") = 1.0);
  m.def("threshold", &threshold, py::arg("cavity"));

  py::class_<GainSetting>(m, "GainSetting")
      .def_property_readonly("r", &GainSetting::r)
      .def_property_readonly("r_th", &GainSetting::r_th)
      .def_property_readonly("fraction", &GainSetting::fraction);
  m.def("make_gain", &make_gain, py::arg("cavity"), py::arg("r"));
  m.def("make_gain_fraction", &make_gain_fraction, py::arg("cavity"),
        py::arg("fraction"));

  py::class_<BogoliubovCoeffs>(m, "BogoliubovCoeffs")
      .def_readonly("A", &BogoliubovCoeffs::A)
      .def_readonly("B", &BogoliubovCoeffs::B)
      .def_readonly("C", &BogoliubovCoeffs::C)
      .def_readonly("D", &BogoliubovCoeffs::D)
      .def("symplectic_defect", &BogoliubovCoeffs::symplectic_defect);
  m.def("coeffs", &coeffs, py::arg("cavity"), py::arg("gain"), py::arg("omega"));

  m.def("squeezing_spectrum", &squeezing_spectrum, py::arg("cavity"),
        py::arg("gain"), py::arg("omega"), py::arg("theta") = 0.0);
  m.def("gamma_fn", &gamma_fn, py::arg("cavity"), py::arg("gain"),
        py::arg("omega"));
  m.def("upsilon_fn", &upsilon_fn, py::arg("cavity"), py::arg("gain"),
        py::arg("omega"));

  py::class_<CorrelationComb>(m, "CorrelationComb")
      .def_readonly("weights", &CorrelationComb::weights)
      .def_readonly("background", &CorrelationComb::background)
      .def_readonly("tau", &CorrelationComb::tau)
      .def_readonly("gain_fraction", &CorrelationComb::gain_fraction)
      .def("k_max", &CorrelationComb::k_max);
  m.def("g2_comb", &g2_comb, py::arg("cavity"), py::arg("gain"),
        py::arg("k_max") = -1, py::arg("hard_limit") = 10000);
  m.def("g2_envelope_normalized", &g2_envelope_normalized, py::arg("comb"));
  m.def("render_lorentzian", &render_lorentzian, py::arg("comb"),
        py::arg("fwhm"), py::arg("t_grid"));

  py::class_<SingleModeParams>(m, "SingleModeParams")
      .def(py::init<double, double, double>(), py::arg("gamma1"),
           py::arg("gamma2"), py::arg("epsilon"))
      .def_readwrite("gamma1", &SingleModeParams::gamma1)
      .def_readwrite("gamma2", &SingleModeParams::gamma2)
      .def_readwrite("epsilon", &SingleModeParams::epsilon)
      .def("total_decay", &SingleModeParams::total_decay);
  m.def("from_cavity", &from_cavity, py::arg("cavity"), py::arg("gain"));
  m.def("g2_single", &g2_single, py::arg("params"), py::arg("T"));
  m.def("g2_multi_finite_n", &g2_multi_finite_n, py::arg("params"), py::arg("N"),
        py::arg("T"), py::arg("tau"));

  py::class_<ModelComparison>(m, "ModelComparison")
      .def_readonly("max_deviation", &ModelComparison::max_deviation)
      .def_readonly("worst_lag", &ModelComparison::worst_lag)
      .def_readonly("background_multi", &ModelComparison::background_multi)
      .def_readonly("background_single", &ModelComparison::background_single);
  m.def("compare_models", &compare_models, py::arg("cavity"), py::arg("gain"),
        py::arg("k_cap") = 10000);

  py::class_<MomentState>(m, "MomentState")
      .def_readonly("n", &MomentState::n)
      .def_readonly("m", &MomentState::m)
      .def("physical", &MomentState::physical);
  m.def("steady_state", &steady_state, py::arg("cavity"), py::arg("gain"),
        py::arg("tol") = 1e-14, py::arg("max_iterations") = 1000000);

  py::class_<VerificationCheck>(m, "VerificationCheck")
      .def_readonly("name", &VerificationCheck::name)
      .def_readonly("worst_deviation", &VerificationCheck::worst_deviation)
      .def_readonly("tolerance", &VerificationCheck::tolerance)
      .def("passed", &VerificationCheck::passed);
  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("checks", &VerificationReport::checks)
      .def("all_passed", &VerificationReport::all_passed);
  m.def("run_verification", &run_verification, py::arg("seed") = 20260823);
}
