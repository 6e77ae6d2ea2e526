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

// Damped least-squares design of Fourier pulses whose correction residuals
// vanish. The residual vector is
//
//   [ rotation error (3) | r1 / tau_p | r2a / tau_p^2 | r2b / tau_p^2 | penalties ]
//
// where the rotation error is the vector part of U_tot P_theta^-1 (sign of
// the scalar part folded in, so -P_theta is accepted) and only the requested
// targets appear.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "shortpulse/corrections.hpp"
#include "shortpulse/pulse.hpp"

namespace shortpulse {

enum class Target { r1, r2a, r2b };

std::string_view to_string(Target t);
/// Throws std::invalid_argument for unknown names.
Target target_from_string(std::string_view name);

struct DesignProblem {
  double theta = 0.0;
  double tau_p = 1.0;
  double tau_s = 0.5;
  /// Treat tau_s as an unknown in (0, tau_p).
  bool tau_s_free = false;

  int order = 1;
  std::array<bool, 3> components = {false, true, false};
  /// Cosine terms only: v(tau_p - t) = v(t).
  bool symmetric = false;

  /// Orders m with d^m v / dt^m = 0 at t = 0 and t = tau_p.
  std::vector<int> zero_derivatives;
  /// Largest allowed |v(t)|; zero disables the penalty.
  double amplitude_bound = 0.0;
  /// Weight of the penalty tau_p int |v|^2 dt / pi^2.
  double power_weight = 0.0;

  std::vector<Target> targets = {Target::r1};
  int restarts = 32;
  /// Time steps of the pulse integration behind every residual evaluation.
  int grid = 512;
  /// Grid of a final refinement run from the best restart, made when its
  /// objective is below 1e-6 (otherwise the point is only re-evaluated there);
  /// 0 disables it.
  int polish_grid = 8192;
  int max_iterations = 300;

  /// Throws std::invalid_argument when the problem is malformed.
  void validate() const;
  /// Unknowns in the solver parameterization.
  int free_parameters() const;
};

struct DesignSolution {
  PulseShape shape;
  CorrectionReport report;
  double objective = 0.0;
  bool converged = false;
  /// Restarts executed before the reported solution was found.
  int restarts_used = 0;
  int iterations = 0;
  /// Solver coordinates of the solution, accepted by solve_from.
  std::vector<double> point;
};

/// Multi-start Levenberg-Marquardt. Never throws on non-convergence; the
/// best point found is returned with converged = false.
DesignSolution solve(const DesignProblem& problem, std::uint64_t seed);

/// A single damped least-squares run from the given solver coordinates.
DesignSolution solve_from(const DesignProblem& problem, const std::vector<double>& point);

/// Residual vector at solver coordinates.
std::vector<double> design_residuals(const DesignProblem& problem,
                                     const std::vector<double>& point);

/// Pulse described by solver coordinates.
PulseShape design_shape(const DesignProblem& problem, const std::vector<double>& point);

/// Uniform random solver coordinates (raw coefficients in [-2 pi / tau_p, 2 pi / tau_p]
/// projected onto the linear endpoint constraints).
std::vector<double> random_point(const DesignProblem& problem, std::uint64_t seed,
                                 std::uint64_t index);

using ResidualFunction = std::function<std::vector<double>(const std::vector<double>&)>;

/// Central-difference Jacobian with steps h * max(1, |x_j|).
std::vector<std::vector<double>> finite_difference_jacobian(const ResidualFunction& f,
                                                            const std::vector<double>& x,
                                                            double h);

struct JacobianCheck {
  /// max |J(h) - J(h/2)| over entries, relative to max |J(h/2)|
  double deviation = 0.0;
  /// deviation above the policy's jacobian_tol (non-smooth point)
  bool flagged = false;
};

JacobianCheck jacobian_check(const ResidualFunction& f, const std::vector<double>& x,
                             double h = 1e-4);
JacobianCheck jacobian_check(const DesignProblem& problem, const std::vector<double>& point,
                             double h = 1e-4);

/// Infeasibility certificate. The bound is an analytic lower bound on the
/// normalized residuals evaluated at the best point:
///   tau_s = tau_p:          |r1| / tau_p    >= tsp_gap / tau_p
///   pi, second order:       |r2a| / tau_p^2 >= (pi2_gap - (tau_p - tau_s)^2 |n(0) + n(tau_p)|) / tau_p^2
/// so best_objective >= bound^2 must hold. Other regimes report data only.
struct FeasibilityCertificate {
  enum class Regime { tau_s_equals_tau_p, pi_second_order, open };
  Regime regime = Regime::open;
  double best_objective = 0.0;
  std::optional<double> gap_bound;
  NoGoDiagnostics diagnostics;
  DesignSolution best;
  int restarts = 0;

  bool holds() const { return !gap_bound || best_objective >= *gap_bound * *gap_bound; }
};

std::string_view to_string(FeasibilityCertificate::Regime r);

/// Certificate for an existing solution: regime detection and the bound at
/// its point.
FeasibilityCertificate certify(const DesignProblem& problem, DesignSolution solution);

/// Runs `budget` restarts and attaches the applicable bound.
FeasibilityCertificate feasibility_probe(const DesignProblem& problem, int budget,
                                         std::uint64_t seed = 0);

}  // namespace shortpulse
