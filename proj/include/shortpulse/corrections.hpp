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

// First- and second-order corrections of a finite pulse relative to the ideal
// instantaneous rotation at tau_s, written on the path n(t) of the unit sphere.
//
// With Dt = t - tau_s, Sigma = int n dt and every residual taken as
// (integral side) - (boundary side):
//
//   r1  = Sigma - [(tau_p - tau_s) n(tau_p) + tau_s n(0)]
//   r2a = 2 int Dt n dt - [(tau_p - tau_s)^2 n(tau_p) - tau_s^2 n(0)]
//   r2b = int_0^tau_p dt1 int_0^t1 dt2 n(t1) x n(t2) - tau_s (tau_p - tau_s) n(tau_p) x n(0)
//
// r2b is the second-order condition on the A^2 term only once r1 = 0.

#pragma once

#include "shortpulse/bath_model.hpp"
#include "shortpulse/pulse.hpp"

namespace shortpulse {

struct CorrectionReport {
  double tau_p = 0.0;
  double tau_s = 0.0;

  Vec3 r1 = Vec3::Zero();
  Vec3 r2a = Vec3::Zero();
  Vec3 r2b = Vec3::Zero();
  double r1_norm = 0.0;
  double r2a_norm = 0.0;
  double r2b_norm = 0.0;

  /// Richardson estimates of the quadrature error (grid vs. every other node).
  double r1_error = 0.0;
  double r2a_error = 0.0;
  double r2b_error = 0.0;
  bool converged = true;
  /// False when |r1| / tau_p exceeds the policy's r2b_validity.
  bool r2b_valid = true;

  /// Sigma = int n dt
  Vec3 sigma_integral = Vec3::Zero();
  /// Full vector of the A^2 second-order term, equal to r2b - B x r1 with
  /// B = (tau_p - tau_s) n(tau_p) - tau_s n(0).
  Vec3 quadratic_term = Vec3::Zero();

  double r1_normalized() const { return r1_norm / tau_p; }
  double r2a_normalized() const { return r2a_norm / (tau_p * tau_p); }
  double r2b_normalized() const { return r2b_norm / (tau_p * tau_p); }
};

struct NoGoDiagnostics {
  /// tau_p - int cos(alpha) dt, cos(alpha) = n(t).n(0)
  double tsp_gap = 0.0;
  /// (tau_p - tau_s)^2 + tau_s^2 + 2 int Dt cos(alpha) dt
  double pi2_gap = 0.0;
  /// |n(0) + n(tau_p)|
  double pi_condition_defect = 0.0;
  /// pi2_gap is only a bound when this holds.
  bool pi_condition_holds = false;
};

/// Joint-space (bath x qubit) operators of the first- and second-order terms
/// of U_F = exp(-i (eta1 + eta2 + ...)).
struct EtaOperators {
  ComplexMatrix first;                // lambda A (x) (r1.sigma)
  ComplexMatrix second_commutator;    // (i/2) lambda [H_b, A] (x) (r2a.sigma)
  ComplexMatrix second_quadratic;     // lambda^2 A^2 (x) (w.sigma)

  ComplexMatrix second() const { return second_commutator + second_quadratic; }
  ComplexMatrix total() const { return first + second(); }
};

/// Throws std::invalid_argument for fewer than 16 nodes or tau_s outside [0, tau_p].
CorrectionReport evaluate_corrections(const NTrajectory& ntraj, double tau_s);

/// Throws std::invalid_argument if the trajectory does not match the report.
EtaOperators eta_operators(const CorrectionReport& report, const BathModel& bath,
                           const NTrajectory& ntraj, double tau_s);

NoGoDiagnostics nogo_diagnostics(const NTrajectory& ntraj, double tau_s);

}  // namespace shortpulse
