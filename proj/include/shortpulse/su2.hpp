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

// Qubit rotation algebra: Pauli matrices, SU(2) exponentials, SO(3) rotation
// matrices and a few dense matrix functions on small complex matrices.
//
// Conventions (hbar = 1):
//   axis_angle_exponential(a, psi) = exp(-i (psi/2) a.sigma)
//   pauli_conjugate(U)_{jk}        = (1/2) Re tr(sigma_j U sigma_k U^dag)
// so that pauli_conjugate(axis_angle_exponential(a, psi)) is the right-handed
// rotation by psi about a, and U^dag sigma_j U = sum_k R_{jk} sigma_k.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>

namespace shortpulse {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Matrix2c = Eigen::Matrix2cd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Raised by matrix_log_unitary when an eigenvalue sits on the branch cut.
class BranchAmbiguityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sigma_x, sigma_y, sigma_z.
const std::array<Matrix2c, 3>& pauli();

/// n . sigma
Matrix2c pauli_dot(const Vec3& n);

/// Unit quaternion view of an SU(2) element, U = w I - i q.sigma.
struct SU2 {
  double w = 1.0;
  Vec3 q = Vec3::Zero();

  static SU2 identity() { return {}; }
  static SU2 from_axis_angle(const Vec3& axis, double angle);
  /// Reads w, q off a 2x2 matrix; assumes it is (close to) special unitary.
  static SU2 from_matrix(const Matrix2c& u);

  Matrix2c matrix() const;
  SU2 adjoint() const { return {w, -q}; }
  SU2 normalized() const;
  double norm() const { return std::sqrt(w * w + q.squaredNorm()); }
};

SU2 operator*(const SU2& lhs, const SU2& rhs);

/// exp(-i (angle/2) axis.sigma). Throws std::invalid_argument if |axis| != 1.
Matrix2c axis_angle_exponential(const Vec3& axis, double angle);

/// Proper rotation of R^3 with its axis-angle data.
class Rotation3 {
 public:
  Rotation3() = default;
  /// Builds from an orthogonal matrix; axis/angle are recovered (angle in [0, pi]).
  static Rotation3 from_matrix(const Mat3& m);

  const Mat3& matrix() const { return matrix_; }
  const Vec3& axis() const { return axis_; }
  double angle() const { return angle_; }

  Vec3 apply(const Vec3& v) const { return matrix_ * v; }
  Rotation3 inverse() const;

 private:
  friend Rotation3 rotation_matrix(const Vec3& axis, double angle);
  Rotation3(const Mat3& m, const Vec3& axis, double angle)
      : matrix_(m), axis_(axis), angle_(angle) {}

  Mat3 matrix_ = Mat3::Identity();
  Vec3 axis_ = Vec3::UnitZ();
  double angle_ = 0.0;
};

Rotation3 operator*(const Rotation3& lhs, const Rotation3& rhs);

/// D_a(angle), Rodrigues form. Throws std::invalid_argument if |axis| != 1.
Rotation3 rotation_matrix(const Vec3& axis, double angle);

/// SO(3) image of a 2x2 unitary (global phase drops out).
/// Throws std::invalid_argument when U is not unitary.
Rotation3 pauli_conjugate(const Matrix2c& u);

/// Principal logarithm of a unitary: returns anti-Hermitian X with exp(X) = U,
/// eigenphases in (-pi, pi]. Throws BranchAmbiguityError if an eigenphase lies
/// within the policy margin of the cut at -1, std::invalid_argument if U is not
/// unitary.
ComplexMatrix matrix_log_unitary(const ComplexMatrix& u);

/// General matrix exponential: scaling-and-squaring with a [13/13] Pade
/// approximant.
ComplexMatrix expm(const ComplexMatrix& a);

/// exp(-i t H) for Hermitian H via its eigendecomposition.
ComplexMatrix exp_hermitian(const ComplexMatrix& h, double t);

/// Spectral norm (largest singular value).
double operator_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double rel_tol);
bool is_unitary(const ComplexMatrix& m, double tol);

/// Nearest unitary in Frobenius norm (polar factor).
ComplexMatrix project_unitary(const ComplexMatrix& m);

bool is_unit_vector(const Vec3& v, double tol);

}  // namespace shortpulse
