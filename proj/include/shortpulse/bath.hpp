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

// Exact propagation of qubit (x) bath under H + H0(t) and the quantities that
// compare it with the ideal-pulse decomposition
//
//   U_p = exp(-i (tau_p - tau_s) H) exp(-i p(tau_p)) U_F exp(i p(0)) exp(-i tau_s H).

#pragma once

#include <stdexcept>
#include <vector>

#include "shortpulse/bath_model.hpp"
#include "shortpulse/corrections.hpp"
#include "shortpulse/pulse.hpp"

namespace shortpulse {

/// Raised when a log-log fit has no usable data.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// exp(-i p(0)) and exp(-i p(tau_p)), from the same slicing as the joint run.
struct PulseEndpoints {
  Matrix2c at_start = Matrix2c::Identity();
  Matrix2c at_end = Matrix2c::Identity();

  /// exp(-i p(tau_p)) exp(i p(0))
  Matrix2c total() const { return at_end * at_start.adjoint(); }
};

struct JointPropagator {
  ComplexMatrix unitary;
  /// ||U(steps) - U(steps / 2)|| / 15
  double richardson_error = 0.0;
  int steps = 0;
  PulseEndpoints endpoints;
};

/// U_p(tau_p, 0) by sixth-order Magnus slicing (three Gauss nodes per slice) on
/// the pulse grid. Throws std::invalid_argument for steps < 256 or a joint
/// dimension above 32.
JointPropagator propagate_joint(const PulseShape& shape, const BathModel& bath, int steps);

/// Pulse-only propagation with the same slicing as propagate_joint.
PulseEndpoints pulse_endpoints(const PulseShape& shape, int steps);

/// U_F = exp(i p(tau_p)) exp(i (tau_p - tau_s) H) U_p exp(i tau_s H) exp(-i p(0)).
ComplexMatrix reconstruct_uf(const ComplexMatrix& u_p, const PulseEndpoints& ends,
                             const PulseShape& shape, const BathModel& bath);
/// Same, with the endpoints integrated on a `steps` grid.
ComplexMatrix reconstruct_uf(const ComplexMatrix& u_p, const PulseShape& shape,
                             const BathModel& bath, int steps = 4096);

/// F(t) = exp(i p(t)) [H0~(t) - H0(t)] exp(-i p(t)), H0~ = exp(i H Dt) H0 exp(-i H Dt).
ComplexMatrix f_generator(const PulseShape& shape, const BathModel& bath, double t,
                          int steps = 1024);

/// U_F as the time-ordered exponential of F over [0, tau_p], integrated
/// directly in the interaction picture (independent of reconstruct_uf).
ComplexMatrix uf_interaction_picture(const PulseShape& shape, const BathModel& bath, int steps);

/// exp(-i theta sigma_y / 2)^dagger = exp(i sigma_y theta / 2)
Matrix2c ideal_pulse(double theta);

struct DecompositionError {
  double tau_p = 0.0;
  /// min over the sign of P_theta of ||U_p - exp(-i(tau_p - tau_s)H) P_theta exp(-i tau_s H)||
  double defect = 0.0;
  /// ||U_F - 1||
  double uf_defect = 0.0;
  /// ||U_F - exp(-i (eta1 + eta2))||
  double magnus_defect = 0.0;
  /// ||U(steps) - U(steps / 2)|| / 15 of the joint run
  double propagation_error = 0.0;
};

/// All three defects of one pulse on one bath.
DecompositionError decomposition_error(const PulseShape& shape, const BathModel& bath,
                                       int steps = 4096);

/// Decomposition defect alone; `sign_free` accepts -P_theta as well.
double decomposition_defect(const ComplexMatrix& u_p, const PulseShape& shape,
                            const BathModel& bath, bool sign_free = true);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int points = 0;
};

/// Least-squares fit of log y against log x. Throws FitError on fewer than two
/// positive points or a degenerate abscissa.
SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct MagnusSweep {
  std::vector<DecompositionError> points;
  SlopeFit defect;
  SlopeFit uf;
  SlopeFit magnus;
};

/// Rescales the dimensionless profile of `shape` to every tau_p in the list
/// (amplitudes scale as 1 / tau_p) and fits the three defects. Throws
/// std::invalid_argument for fewer than 4 durations or less than one decade,
/// FitError when a defect vanishes identically.
MagnusSweep magnus_consistency(const PulseShape& shape, const BathModel& bath,
                               const std::vector<double>& tau_list, int steps = 4096);

/// n geometric points from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, int n);

}  // namespace shortpulse
