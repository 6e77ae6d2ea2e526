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
#include <vector>

#include "shortpulse/su2.hpp"

namespace shortpulse {

/// Finite bath coupled to the qubit through H = H_b + lambda A sigma_z.
/// Joint operators are ordered bath (x) qubit.
class BathModel {
 public:
  /// A is rescaled to unit operator norm and lambda absorbs the factor, so the
  /// physical Hamiltonian is unchanged. Throws std::invalid_argument on
  /// non-Hermitian or mismatched operators, or dim_b outside 1..16.
  static BathModel from_operators(ComplexMatrix h_b, ComplexMatrix a, double lambda);

  /// Named benches (dim_b = 2 unless noted):
  ///   "spin-dephasing"   H_b = omega_b tau_z, A = tau_x   ([H_b, A] != 0)
  ///   "spin-ising"       H_b = omega_b tau_z, A = tau_z   ([H_b, A] == 0)
  ///   "static-dephasing" dim_b = 1, H_b = 0, A = 1        (H = lambda sigma_z)
  static BathModel preset(std::string_view name, double omega_b, double lambda);
  static const std::vector<std::string>& preset_names();

  int dim_b() const { return static_cast<int>(h_b_.rows()); }
  int joint_dim() const { return 2 * dim_b(); }
  const ComplexMatrix& h_b() const { return h_b_; }
  const ComplexMatrix& a() const { return a_; }
  double lambda() const { return lambda_; }
  /// [H_b, A] != 0
  bool dynamic() const { return dynamic_; }
  ComplexMatrix commutator() const { return h_b_ * a_ - a_ * h_b_; }

  /// H = H_b (x) 1 + lambda A (x) sigma_z
  ComplexMatrix joint_hamiltonian() const;
  /// 1_b (x) q
  ComplexMatrix lift_qubit(const Matrix2c& q) const;

 private:
  BathModel(ComplexMatrix h_b, ComplexMatrix a, double lambda);

  ComplexMatrix h_b_;
  ComplexMatrix a_;
  double lambda_ = 0.0;
  bool dynamic_ = false;
};

}  // namespace shortpulse
