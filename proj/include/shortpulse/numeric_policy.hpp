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

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace shortpulse {

/// Every tolerance used by the library lives here so that tests, the CLI
/// and the run manifest all see the same numbers.
struct NumericPolicy {
  double hermitian_tol = 1e-12;      // relative, Frobenius
  double unitary_tol = 1e-10;        // ||U^dag U - I||_F
  double unit_norm_tol = 1e-9;       // | |a| - 1 |
  double branch_cut_margin = 1e-6;   // eigenphase distance from -1
  double quadrature_rel = 1e-3;      // quadrature estimate / norm
  double quadrature_abs = 1e-10;     // floor for near-zero residuals
  double r2b_validity = 1e-6;        // |r1| / tau_p above which r2b is flagged
  double pi_condition_tol = 1e-6;    // |n(0) + n(tau_p)|
  double nogo_tol = 1e-9;            // allowed negative gap
  double converged_objective = 1e-16;
  double jacobian_tol = 1e-4;
  double residual_threshold = 1e-6;  // CLI pass threshold on normalized residuals
  int reprojection_interval = 64;    // RK4 steps between polar re-projections

  /// Stable textual form, used by the run manifest.
  std::string serialize() const;

  /// Applies "key=value" overrides separated by ',' or ';'.
  /// Throws std::invalid_argument on unknown keys or malformed values.
  void apply_overrides(std::string_view text);

  std::vector<std::pair<std::string, double>> entries() const;
};

/// Name of the environment variable read by numeric_policy().
inline constexpr const char* kPolicyEnvVar = "SHORTPULSE_NUMERIC_POLICY";

/// Process-wide policy: defaults plus overrides from SHORTPULSE_NUMERIC_POLICY,
/// read once on first use.
const NumericPolicy& numeric_policy();

}  // namespace shortpulse
