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

#include "shortpulse/bath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "shortpulse/numeric_policy.hpp"

namespace shortpulse {

// ---------------------------------------------------------------- BathModel

BathModel::BathModel(ComplexMatrix h_b, ComplexMatrix a, double lambda)
    : h_b_(std::move(h_b)), a_(std::move(a)), lambda_(lambda) {
  dynamic_ = operator_norm(commutator()) > 1e-12;
}

BathModel BathModel::from_operators(ComplexMatrix h_b, ComplexMatrix a, double lambda) {
  if (h_b.rows() != h_b.cols() || a.rows() != a.cols() || h_b.rows() != a.rows()) {
    throw std::invalid_argument("BathModel: H_b and A must be square and of equal size");
  }
  if (h_b.rows() < 1 || h_b.rows() > 16) {
    throw std::invalid_argument("BathModel: bath dimension must be in 1..16");
  }
  if (!h_b.allFinite() || !a.allFinite() || !std::isfinite(lambda)) {
    throw std::invalid_argument("BathModel: non-finite entries");
  }
  const double tol = numeric_policy().hermitian_tol;
  if (!is_hermitian(h_b, tol)) throw std::invalid_argument("BathModel: H_b is not Hermitian");
  if (!is_hermitian(a, tol)) throw std::invalid_argument("BathModel: A is not Hermitian");
  const double scale = operator_norm(a);
  if (!(scale > 0.0)) throw std::invalid_argument("BathModel: A must be nonzero");
  // Exact Hermitian symmetrization removes rounding left by the tolerance check.
  ComplexMatrix hs = 0.5 * (h_b + h_b.adjoint());
  ComplexMatrix as = 0.5 * (a + a.adjoint()) / scale;
  return BathModel(std::move(hs), std::move(as), lambda * scale);
}

const std::vector<std::string>& BathModel::preset_names() {
  static const std::vector<std::string> names = {"spin-dephasing", "spin-ising",
                                                 "static-dephasing"};
  return names;
}

BathModel BathModel::preset(std::string_view name, double omega_b, double lambda) {
  const auto& s = pauli();
  if (name == "spin-dephasing") return from_operators(omega_b * s[2], s[0], lambda);
  if (name == "spin-ising") return from_operators(omega_b * s[2], s[2], lambda);
  if (name == "static-dephasing") {
    return from_operators(ComplexMatrix::Zero(1, 1), ComplexMatrix::Identity(1, 1), lambda);
  }
  throw std::invalid_argument("BathModel: unknown preset '" + std::string(name) + "'");
}

ComplexMatrix BathModel::joint_hamiltonian() const {
  return kron(h_b_, Matrix2c::Identity()) + lambda_ * kron(a_, pauli()[2]);
}

ComplexMatrix BathModel::lift_qubit(const Matrix2c& q) const {
  return kron(ComplexMatrix::Identity(dim_b(), dim_b()), q);
}

// ------------------------------------------------------------- propagation

namespace {

// Sixth-order Magnus step on [t0, t0 + h] with three Gauss-Legendre nodes
// (Blanes, Casas and Ros form). With A_i = -i h H(t_i):
//   a1 = A2, a2 = sqrt(15)/3 (A3 - A1), a3 = 10/3 (A3 - 2 A2 + A1)
//   C1 = [a1, a2], C2 = -[a1, 2 a3 + C1] / 60
//   Omega = a1 + a3 / 12 + [-20 a1 - a3 + C1, a2 + C2] / 240
const double kGaussOffset = std::sqrt(15.0) / 10.0;

struct GaussNodes {
  std::array<double, 3> t;
  double selector;
};

GaussNodes gauss_nodes(double t0, double t1) {
  const double mid = 0.5 * (t0 + t1);
  const double h = t1 - t0;
  return {{mid - kGaussOffset * h, mid, mid + kGaussOffset * h}, mid};
}

Vec3 checked_amplitude(const PulseShape& shape, double t, double selector) {
  const Vec3 v = shape.amplitude(t, selector);
  if (!v.allFinite()) throw std::invalid_argument("propagation: non-finite amplitude");
  return v;
}

// Generic sixth-order combination; `comm` is the Lie bracket of the algebra.
template <typename T, typename Comm>
T magnus6(const T& a1_, const T& a2_, const T& a3_, Comm comm) {
  const double r15 = std::sqrt(15.0);
  const T a1 = a2_;
  const T a2 = (r15 / 3.0) * (a3_ - a1_);
  const T a3 = (10.0 / 3.0) * (a3_ - 2.0 * a2_ + a1_);
  const T c1 = comm(a1, a2);
  const T c2 = (-1.0 / 60.0) * comm(a1, (2.0 * a3 + c1).eval());
  return a1 + a3 / 12.0 + comm((-20.0 * a1 - a3 + c1).eval(), (a2 + c2).eval()) / 240.0;
}

// In su(2) write A = -i a.sigma; then [A, B] corresponds to 2 a x b and
// exp(A) = exp(-i |a| ahat.sigma).
SU2 su2_exponential(const Vec3& g) {
  const double len = g.norm();
  if (len == 0.0) return SU2::identity();
  return SU2::from_axis_angle(g / len, 2.0 * len);
}

SU2 pulse_magnus_step(const PulseShape& shape, double t0, double t1, double selector) {
  const double h = t1 - t0;
  const double mid = 0.5 * (t0 + t1);
  const double off = kGaussOffset * h;
  const Vec3 v1 = h * checked_amplitude(shape, mid - off, selector);
  const Vec3 v2 = h * checked_amplitude(shape, mid, selector);
  const Vec3 v3 = h * checked_amplitude(shape, mid + off, selector);
  const Vec3 g = magnus6<Vec3>(v1, v2, v3, [](const Vec3& x, const Vec3& y) -> Vec3 {
    return 2.0 * x.cross(y);
  });
  return su2_exponential(g);
}

SU2 pulse_magnus_step(const PulseShape& shape, double t0, double t1) {
  return pulse_magnus_step(shape, t0, t1, 0.5 * (t0 + t1));
}

// exp(Omega) for Hamiltonians sampled at the three Gauss nodes of a slice.
ComplexMatrix magnus_exponential(const std::array<ComplexMatrix, 3>& h, double step) {
  const Complex f(0.0, -step);
  const ComplexMatrix omega = magnus6<ComplexMatrix>(
      f * h[0], f * h[1], f * h[2],
      [](const ComplexMatrix& x, const ComplexMatrix& y) -> ComplexMatrix {
        return x * y - y * x;
      });
  // Omega is anti-Hermitian: exp(Omega) = exp(-i G) with G = i Omega.
  ComplexMatrix g = Complex(0.0, 1.0) * omega;
  g = 0.5 * (g + g.adjoint()).eval();
  return exp_hermitian(g, 1.0);
}

void check_steps(int steps, int minimum, const char* what) {
  if (steps < minimum) {
    throw std::invalid_argument(std::string(what) + ": steps must be >= " +
                                std::to_string(minimum));
  }
}

// U(t_i, 0) for the pulse alone on the grid nodes.
std::vector<SU2> pulse_from_zero(const PulseShape& shape, const TimeGrid& grid) {
  const auto& t = grid.t;
  std::vector<SU2> u(t.size());
  u[0] = SU2::identity();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    u[i + 1] = (pulse_magnus_step(shape, t[i], t[i + 1]) * u[i]).normalized();
  }
  return u;
}

PulseEndpoints endpoints_from(const std::vector<SU2>& u_from_zero, std::size_t split) {
  const SU2 back = u_from_zero[split].adjoint();
  PulseEndpoints ends;
  ends.at_start = back.matrix();
  ends.at_end = (u_from_zero.back() * back).matrix();
  return ends;
}

ComplexMatrix joint_run(const PulseShape& shape, const BathModel& bath, const TimeGrid& grid) {
  const ComplexMatrix h = bath.joint_hamiltonian();
  const auto& t = grid.t;
  ComplexMatrix u = ComplexMatrix::Identity(bath.joint_dim(), bath.joint_dim());
  const int reproject = numeric_policy().reprojection_interval;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const GaussNodes g = gauss_nodes(t[i], t[i + 1]);
    std::array<ComplexMatrix, 3> hs;
    for (int k = 0; k < 3; ++k) {
      hs[k] = h + bath.lift_qubit(pauli_dot(checked_amplitude(shape, g.t[k], g.selector)));
    }
    u = magnus_exponential(hs, t[i + 1] - t[i]) * u;
    if ((i + 1) % reproject == 0) u = project_unitary(u);
  }
  return project_unitary(u);
}

void check_joint(const BathModel& bath) {
  if (bath.joint_dim() > 32) {
    throw std::invalid_argument("propagate_joint: joint dimension exceeds 32");
  }
}

}  // namespace

Matrix2c ideal_pulse(double theta) {
  return axis_angle_exponential(Vec3::UnitY(), -theta);
}

PulseEndpoints pulse_endpoints(const PulseShape& shape, int steps) {
  check_steps(steps, 1, "pulse_endpoints");
  const TimeGrid grid = make_time_grid(shape, steps);
  return endpoints_from(pulse_from_zero(shape, grid), grid.split);
}

JointPropagator propagate_joint(const PulseShape& shape, const BathModel& bath, int steps) {
  check_steps(steps, 256, "propagate_joint");
  check_joint(bath);
  const TimeGrid grid = make_time_grid(shape, steps);
  const TimeGrid coarse = make_time_grid(shape, steps / 2);
  JointPropagator out;
  out.steps = steps;
  out.unitary = joint_run(shape, bath, grid);
  out.richardson_error = operator_norm(out.unitary - joint_run(shape, bath, coarse)) / 15.0;
  out.endpoints = endpoints_from(pulse_from_zero(shape, grid), grid.split);
  return out;
}

ComplexMatrix reconstruct_uf(const ComplexMatrix& u_p, const PulseEndpoints& ends,
                             const PulseShape& shape, const BathModel& bath) {
  if (u_p.rows() != bath.joint_dim() || u_p.cols() != bath.joint_dim()) {
    throw std::invalid_argument("reconstruct_uf: U_p does not match the bath dimension");
  }
  if (!is_unitary(u_p, 1e-9 * std::sqrt(static_cast<double>(u_p.rows())))) {
    throw std::invalid_argument("reconstruct_uf: U_p is not unitary");
  }
  const ComplexMatrix h = bath.joint_hamiltonian();
  const double tau_p = shape.tau_p();
  const double tau_s = shape.tau_s();
  const ComplexMatrix uf = bath.lift_qubit(ends.at_end.adjoint()) *
                           exp_hermitian(h, -(tau_p - tau_s)) * u_p * exp_hermitian(h, -tau_s) *
                           bath.lift_qubit(ends.at_start);
  return project_unitary(uf);
}

ComplexMatrix reconstruct_uf(const ComplexMatrix& u_p, const PulseShape& shape,
                             const BathModel& bath, int steps) {
  return reconstruct_uf(u_p, pulse_endpoints(shape, steps), shape, bath);
}

namespace {

// exp(-i p(t)) from the grid: U(t, 0) U(tau_s, 0)^dagger, with a partial step
// from the node below t.
Matrix2c pulse_frame_at(const PulseShape& shape, const TimeGrid& grid,
                        const std::vector<SU2>& u_from_zero, double t) {
  const auto& nodes = grid.t;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
  std::size_t i = it == nodes.begin() ? 0 : static_cast<std::size_t>(it - nodes.begin()) - 1;
  if (i + 1 >= nodes.size()) i = nodes.size() - 2;
  SU2 u = u_from_zero[i];
  if (t > nodes[i]) {
    // Segment choice follows the enclosing grid interval.
    u = pulse_magnus_step(shape, nodes[i], t, 0.5 * (nodes[i] + nodes[i + 1])) * u;
  }
  return (u * u_from_zero[grid.split].adjoint()).matrix();
}

ComplexMatrix f_at(const PulseShape& shape, const BathModel& bath, const ComplexMatrix& h,
                   const Matrix2c& frame, double t, double selector) {
  const double dt = t - shape.tau_s();
  const ComplexMatrix h0 = bath.lift_qubit(pauli_dot(checked_amplitude(shape, t, selector)));
  const ComplexMatrix e = exp_hermitian(h, -dt);  // exp(i H Dt)
  const ComplexMatrix p = bath.lift_qubit(frame);
  ComplexMatrix f = p.adjoint() * (e * h0 * e.adjoint() - h0) * p;
  return 0.5 * (f + f.adjoint());
}

}  // namespace

ComplexMatrix f_generator(const PulseShape& shape, const BathModel& bath, double t, int steps) {
  check_steps(steps, 1, "f_generator");
  check_joint(bath);
  if (!(t >= 0.0 && t <= shape.tau_p())) {
    throw std::out_of_range("f_generator: t outside [0, tau_p]");
  }
  const TimeGrid grid = make_time_grid(shape, steps);
  const auto u = pulse_from_zero(shape, grid);
  return f_at(shape, bath, bath.joint_hamiltonian(), pulse_frame_at(shape, grid, u, t), t, t);
}

ComplexMatrix uf_interaction_picture(const PulseShape& shape, const BathModel& bath, int steps) {
  check_steps(steps, 256, "uf_interaction_picture");
  check_joint(bath);
  const TimeGrid grid = make_time_grid(shape, steps);
  const auto u = pulse_from_zero(shape, grid);
  const ComplexMatrix h = bath.joint_hamiltonian();
  const auto& t = grid.t;
  ComplexMatrix w = ComplexMatrix::Identity(bath.joint_dim(), bath.joint_dim());
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const GaussNodes g = gauss_nodes(t[i], t[i + 1]);
    std::array<ComplexMatrix, 3> fs;
    for (int k = 0; k < 3; ++k) {
      fs[k] = f_at(shape, bath, h, pulse_frame_at(shape, grid, u, g.t[k]), g.t[k], g.selector);
    }
    w = magnus_exponential(fs, t[i + 1] - t[i]) * w;
  }
  return project_unitary(w);
}

// ------------------------------------------------------------------ defects

double decomposition_defect(const ComplexMatrix& u_p, const PulseShape& shape,
                            const BathModel& bath, bool sign_free) {
  const ComplexMatrix h = bath.joint_hamiltonian();
  const ComplexMatrix ideal = exp_hermitian(h, shape.tau_p() - shape.tau_s()) *
                              bath.lift_qubit(ideal_pulse(shape.theta())) *
                              exp_hermitian(h, shape.tau_s());
  const double plus = operator_norm(u_p - ideal);
  if (!sign_free) return plus;
  return std::min(plus, operator_norm(u_p + ideal));
}

DecompositionError decomposition_error(const PulseShape& shape, const BathModel& bath,
                                       int steps) {
  const JointPropagator prop = propagate_joint(shape, bath, steps);
  const ComplexMatrix uf = reconstruct_uf(prop.unitary, prop.endpoints, shape, bath);

  const AxisAngleTrajectory traj = integrate_axis_angle(shape, steps);
  const NTrajectory ntraj = n_trajectory(traj);
  const CorrectionReport report = evaluate_corrections(ntraj, shape.tau_s());
  const EtaOperators eta = eta_operators(report, bath, ntraj, shape.tau_s());
  ComplexMatrix generator = eta.total();
  generator = 0.5 * (generator + generator.adjoint()).eval();

  DecompositionError out;
  out.tau_p = shape.tau_p();
  out.defect = decomposition_defect(prop.unitary, shape, bath);
  out.uf_defect =
      operator_norm(uf - ComplexMatrix::Identity(bath.joint_dim(), bath.joint_dim()));
  out.magnus_defect = operator_norm(uf - exp_hermitian(generator, 1.0));
  out.propagation_error = prop.richardson_error;
  return out;
}

// --------------------------------------------------------------------- fits

SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_fit: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < x.size() || lx.size() < 2) {
    throw FitError("loglog_fit: every point needs positive finite coordinates (" +
                   std::to_string(lx.size()) + " of " + std::to_string(x.size()) + ")");
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("loglog_fit: abscissa values coincide");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = static_cast<int>(lx.size());
  if (lx.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  }
  return fit;
}

std::vector<double> log_space(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > 0.0) || n < 1) throw std::invalid_argument("log_space: bad range");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

MagnusSweep magnus_consistency(const PulseShape& shape, const BathModel& bath,
                               const std::vector<double>& tau_list, int steps) {
  if (tau_list.size() < 4) {
    throw std::invalid_argument("magnus_consistency: need at least 4 durations");
  }
  const auto [lo, hi] = std::minmax_element(tau_list.begin(), tau_list.end());
  if (!(*lo > 0.0) || *hi / *lo < 10.0 * (1.0 - 1e-9)) {
    throw std::invalid_argument("magnus_consistency: durations must span at least one decade");
  }
  MagnusSweep sweep;
  sweep.points.resize(tau_list.size());
  detail::parallel_for(tau_list.size(), [&](std::size_t i) {
    sweep.points[i] = decomposition_error(shape.rescaled(tau_list[i]), bath, steps);
  });
  std::vector<double> d, u, m;
  for (const auto& p : sweep.points) {
    d.push_back(p.defect);
    u.push_back(p.uf_defect);
    m.push_back(p.magnus_defect);
  }
  sweep.defect = loglog_fit(tau_list, d);
  sweep.uf = loglog_fit(tau_list, u);
  sweep.magnus = loglog_fit(tau_list, m);
  return sweep;
}

}  // namespace shortpulse
