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

#include "shortpulse/su2.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shortpulse/numeric_policy.hpp"

namespace shortpulse {

namespace {

const Complex kI(0.0, 1.0);

void require_unit_axis(const Vec3& axis, const char* what) {
  if (!is_unit_vector(axis, numeric_policy().unit_norm_tol)) {
    throw std::invalid_argument(std::string(what) + ": axis must be a unit vector (|axis| = " +
                                std::to_string(axis.norm()) + ")");
  }
}

Mat3 skew(const Vec3& a) {
  Mat3 k;
  k << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return k;
}

}  // namespace

const std::array<Matrix2c, 3>& pauli() {
  static const std::array<Matrix2c, 3> sigma = [] {
    std::array<Matrix2c, 3> s;
    s[0] << 0.0, 1.0, 1.0, 0.0;
    s[1] << 0.0, -kI, kI, 0.0;
    s[2] << 1.0, 0.0, 0.0, -1.0;
    return s;
  }();
  return sigma;
}

Matrix2c pauli_dot(const Vec3& n) {
  Matrix2c m;
  m << n.z(), Complex(n.x(), -n.y()),
       Complex(n.x(), n.y()), -n.z();
  return m;
}

bool is_unit_vector(const Vec3& v, double tol) {
  return std::isfinite(v.norm()) && std::abs(v.norm() - 1.0) <= tol;
}

// ---------------------------------------------------------------------------
// SU(2) as unit quaternions
// ---------------------------------------------------------------------------

SU2 SU2::from_axis_angle(const Vec3& axis, double angle) {
  return {std::cos(0.5 * angle), std::sin(0.5 * angle) * axis};
}

SU2 SU2::from_matrix(const Matrix2c& u) {
  // tr U = 2w and tr(sigma_j U) = -2i q_j.
  SU2 out;
  out.w = 0.5 * u.trace().real();
  const auto& s = pauli();
  for (int j = 0; j < 3; ++j) out.q(j) = 0.5 * (kI * (s[j] * u).trace()).real();
  return out;
}

Matrix2c SU2::matrix() const {
  Matrix2c m = Matrix2c::Identity() * w;
  m -= kI * pauli_dot(q);
  return m;
}

SU2 SU2::normalized() const {
  const double n = norm();
  return {w / n, q / n};
}

SU2 operator*(const SU2& a, const SU2& b) {
  return {a.w * b.w - a.q.dot(b.q), a.w * b.q + b.w * a.q + a.q.cross(b.q)};
}

Matrix2c axis_angle_exponential(const Vec3& axis, double angle) {
  require_unit_axis(axis, "axis_angle_exponential");
  return SU2::from_axis_angle(axis, angle).matrix();
}

// ---------------------------------------------------------------------------
// SO(3)
// ---------------------------------------------------------------------------

Rotation3 rotation_matrix(const Vec3& axis, double angle) {
  require_unit_axis(axis, "rotation_matrix");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 m = c * Mat3::Identity() + s * skew(axis) + (1.0 - c) * axis * axis.transpose();
  return Rotation3(m, axis, angle);
}

Rotation3 Rotation3::from_matrix(const Mat3& m) {
  Rotation3 r;
  r.matrix_ = m;
  const double cos_angle = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
  Vec3 anti(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  const double sin_angle = 0.5 * anti.norm();
  r.angle_ = std::atan2(sin_angle, cos_angle);
  if (sin_angle > 1e-6) {
    r.axis_ = anti.normalized();
  } else if (cos_angle > 0.0) {
    r.axis_ = Vec3::UnitZ();
    r.angle_ = 0.0;
  } else {
    // Near a half turn: the axis is the dominant column of (M + I) / 2 = a a^T.
    Mat3 aat = 0.5 * (m + Mat3::Identity());
    int col = 0;
    aat.diagonal().maxCoeff(&col);
    Vec3 a = aat.col(col).normalized();
    if (sin_angle > 0.0 && a.dot(anti) < 0.0) a = -a;
    r.axis_ = a;
  }
  return r;
}

Rotation3 Rotation3::inverse() const {
  return Rotation3(matrix_.transpose(), axis_, -angle_);
}

Rotation3 operator*(const Rotation3& lhs, const Rotation3& rhs) {
  return Rotation3::from_matrix(lhs.matrix() * rhs.matrix());
}

Rotation3 pauli_conjugate(const Matrix2c& u) {
  if (!is_unitary(u, numeric_policy().unitary_tol)) {
    throw std::invalid_argument("pauli_conjugate: input is not unitary");
  }
  const auto& s = pauli();
  const Matrix2c ud = u.adjoint();
  Mat3 r;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      r(j, k) = 0.5 * (s[j] * u * s[k] * ud).trace().real();
    }
  }
  return Rotation3::from_matrix(r);
}

// ---------------------------------------------------------------------------
// Dense matrix functions
// ---------------------------------------------------------------------------

ComplexMatrix expm(const ComplexMatrix& a) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const ComplexMatrix x = a / std::ldexp(1.0, squarings);
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;
  ComplexMatrix u = x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 +
                         b[3] * x2 + b[1] * id);
  ComplexMatrix v =
      x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;
  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

ComplexMatrix exp_hermitian(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
  const auto& vals = eig.eigenvalues();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) phases(i) = std::polar(1.0, -t * vals(i));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

ComplexMatrix matrix_log_unitary(const ComplexMatrix& u) {
  const auto& policy = numeric_policy();
  if (!is_unitary(u, policy.unitary_tol)) {
    throw std::invalid_argument("matrix_log_unitary: input is not unitary");
  }
  // Unitaries are normal, so the Schur form is diagonal to rounding.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  Eigen::VectorXcd logs(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double phase = std::arg(t(i, i));
    if (std::numbers::pi - std::abs(phase) < policy.branch_cut_margin) {
      throw BranchAmbiguityError("matrix_log_unitary: eigenvalue on the branch cut at -1");
    }
    logs(i) = Complex(0.0, phase);
  }
  ComplexMatrix x = q * logs.asDiagonal() * q.adjoint();
  return 0.5 * (x - x.adjoint());
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= rel_tol * std::max(m.norm(), 1e-300);
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix d = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
  return d.norm() <= tol;
}

ComplexMatrix project_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace shortpulse
