// Copyright 2026 The shortpulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shortpulse/bath.hpp"
#include "shortpulse/corrections.hpp"
#include "shortpulse/io.hpp"
#include "shortpulse/optimizer.hpp"
#include "shortpulse/pulse.hpp"
#include "shortpulse/random_pulses.hpp"

namespace py = pybind11;
namespace sp = shortpulse;

namespace {

sp::PulseShape fourier_pulse(double tau_p, double tau_s, double theta,
                             const std::array<std::vector<double>, 3>& cos,
                             const std::array<std::vector<double>, 3>& sin) {
  sp::FourierSeries f;
  f.order = static_cast<int>(cos[0].size()) - 1;
  f.cos = cos;
  f.sin = sin;
  return sp::PulseShape::fourier(tau_p, tau_s, theta, std::move(f));
}

sp::CorrectionReport corrections(const sp::PulseShape& shape, int grid) {
  return sp::evaluate_corrections(sp::n_trajectory(sp::integrate_axis_angle(shape, grid)),
                                  shape.tau_s());
}

sp::NoGoDiagnostics nogo(const sp::PulseShape& shape, int grid) {
  return sp::nogo_diagnostics(sp::n_trajectory(sp::integrate_axis_angle(shape, grid)),
                              shape.tau_s());
}

}  // namespace

PYBIND11_MODULE(_shortpulse, m) {
  m.doc() = "Short control pulses for a qubit coupled to a bath";
  m.attr("__version__") = sp::kToolVersion;

  py::register_exception<sp::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<sp::FitError>(m, "FitError", PyExc_RuntimeError);

  py::enum_<sp::Representation>(m, "Representation")
      .value("fourier", sp::Representation::fourier)
      .value("piecewise_constant", sp::Representation::piecewise_constant)
      .value("axis_angle_samples", sp::Representation::axis_angle_samples);

  py::class_<sp::PulseShape>(m, "PulseShape")
      .def(py::init<>())
      .def_property_readonly("tau_p", &sp::PulseShape::tau_p)
      .def_property_readonly("tau_s", &sp::PulseShape::tau_s)
      .def_property_readonly("theta", &sp::PulseShape::theta)
      .def_property_readonly("representation", &sp::PulseShape::representation)
      .def("amplitude", [](const sp::PulseShape& s, double t) { return sp::eval_amplitude(s, t); })
      .def("with_tau_s", &sp::PulseShape::with_tau_s)
      .def("rescaled", &sp::PulseShape::rescaled)
      .def("__repr__", [](const sp::PulseShape& s) {
        return "<PulseShape " + std::string(sp::to_string(s.representation())) +
               " tau_p=" + sp::format_real(s.tau_p()) + ">";
      });

  m.def("fourier_pulse", &fourier_pulse, py::arg("tau_p"), py::arg("tau_s"), py::arg("theta"),
        py::arg("cos"), py::arg("sin"),
        "Fourier pulse; cos[i] has order + 1 entries and sin[i] has order entries.");
  m.def("parse_pulse", [](const std::string& text) { return sp::parse_pulse(text); });
  m.def("format_pulse", &sp::format_pulse);

  py::class_<sp::CorrectionReport>(m, "CorrectionReport")
      .def_readonly("tau_p", &sp::CorrectionReport::tau_p)
      .def_readonly("tau_s", &sp::CorrectionReport::tau_s)
      .def_readonly("r1", &sp::CorrectionReport::r1)
      .def_readonly("r2a", &sp::CorrectionReport::r2a)
      .def_readonly("r2b", &sp::CorrectionReport::r2b)
      .def_readonly("converged", &sp::CorrectionReport::converged)
      .def_readonly("r2b_valid", &sp::CorrectionReport::r2b_valid)
      .def_property_readonly("r1_normalized", &sp::CorrectionReport::r1_normalized)
      .def_property_readonly("r2a_normalized", &sp::CorrectionReport::r2a_normalized)
      .def_property_readonly("r2b_normalized", &sp::CorrectionReport::r2b_normalized);

  py::class_<sp::NoGoDiagnostics>(m, "NoGoDiagnostics")
      .def_readonly("tsp_gap", &sp::NoGoDiagnostics::tsp_gap)
      .def_readonly("pi2_gap", &sp::NoGoDiagnostics::pi2_gap)
      .def_readonly("pi_condition_defect", &sp::NoGoDiagnostics::pi_condition_defect)
      .def_readonly("pi_condition_holds", &sp::NoGoDiagnostics::pi_condition_holds);

  m.def("corrections", &corrections, py::arg("shape"), py::arg("grid") = 4096);
  m.def("nogo_diagnostics", &nogo, py::arg("shape"), py::arg("grid") = 4096);

  py::class_<sp::BathModel>(m, "BathModel")
      .def_static("preset", &sp::BathModel::preset, py::arg("name"), py::arg("omega_b"),
                  py::arg("lambda_"))
      .def_static("from_operators", &sp::BathModel::from_operators)
      .def_property_readonly("dim_b", &sp::BathModel::dim_b)
      .def_property_readonly("lambda_", &sp::BathModel::lambda)
      .def_property_readonly("dynamic", &sp::BathModel::dynamic);

  py::class_<sp::DecompositionError>(m, "DecompositionError")
      .def_readonly("tau_p", &sp::DecompositionError::tau_p)
      .def_readonly("defect", &sp::DecompositionError::defect)
      .def_readonly("uf_defect", &sp::DecompositionError::uf_defect)
      .def_readonly("magnus_defect", &sp::DecompositionError::magnus_defect)
      .def_readonly("propagation_error", &sp::DecompositionError::propagation_error);

  py::class_<sp::SlopeFit>(m, "SlopeFit")
      .def_readonly("slope", &sp::SlopeFit::slope)
      .def_readonly("slope_stderr", &sp::SlopeFit::slope_stderr)
      .def_readonly("intercept", &sp::SlopeFit::intercept);

  py::class_<sp::MagnusSweep>(m, "MagnusSweep")
      .def_readonly("points", &sp::MagnusSweep::points)
      .def_readonly("defect", &sp::MagnusSweep::defect)
      .def_readonly("uf", &sp::MagnusSweep::uf)
      .def_readonly("magnus", &sp::MagnusSweep::magnus);

  m.def("decomposition_error", &sp::decomposition_error, py::arg("shape"), py::arg("bath"),
        py::arg("steps") = 4096);
  m.def("magnus_consistency", &sp::magnus_consistency, py::arg("shape"), py::arg("bath"),
        py::arg("tau_list"), py::arg("steps") = 4096);
  m.def("log_space", &sp::log_space);

  py::enum_<sp::Target>(m, "Target")
      .value("r1", sp::Target::r1)
      .value("r2a", sp::Target::r2a)
      .value("r2b", sp::Target::r2b);

  py::class_<sp::DesignProblem>(m, "DesignProblem")
      .def(py::init<>())
      .def_readwrite("theta", &sp::DesignProblem::theta)
      .def_readwrite("tau_p", &sp::DesignProblem::tau_p)
      .def_readwrite("tau_s", &sp::DesignProblem::tau_s)
      .def_readwrite("tau_s_free", &sp::DesignProblem::tau_s_free)
      .def_readwrite("order", &sp::DesignProblem::order)
      .def_readwrite("components", &sp::DesignProblem::components)
      .def_readwrite("symmetric", &sp::DesignProblem::symmetric)
      .def_readwrite("zero_derivatives", &sp::DesignProblem::zero_derivatives)
      .def_readwrite("amplitude_bound", &sp::DesignProblem::amplitude_bound)
      .def_readwrite("power_weight", &sp::DesignProblem::power_weight)
      .def_readwrite("targets", &sp::DesignProblem::targets)
      .def_readwrite("restarts", &sp::DesignProblem::restarts)
      .def_readwrite("grid", &sp::DesignProblem::grid)
      .def_readwrite("polish_grid", &sp::DesignProblem::polish_grid)
      .def_readwrite("max_iterations", &sp::DesignProblem::max_iterations)
      .def("validate", &sp::DesignProblem::validate);

  py::class_<sp::DesignSolution>(m, "DesignSolution")
      .def_readonly("shape", &sp::DesignSolution::shape)
      .def_readonly("report", &sp::DesignSolution::report)
      .def_readonly("objective", &sp::DesignSolution::objective)
      .def_readonly("converged", &sp::DesignSolution::converged)
      .def_readonly("restarts_used", &sp::DesignSolution::restarts_used)
      .def_readonly("point", &sp::DesignSolution::point);

  m.def("solve", &sp::solve, py::arg("problem"), py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

  m.def("random_pi_conditioned_pulse", [](std::uint64_t seed, std::uint64_t index, double tau_p,
                                          int max_order) {
    sp::Rng rng = sp::make_rng(seed, index);
    return sp::random_pi_conditioned_pulse(rng, tau_p, max_order);
  }, py::arg("seed"), py::arg("index"), py::arg("tau_p") = 1.0, py::arg("max_order") = 4);
}
