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

#include "shortpulse/corrections.hpp"

#include <cmath>
#include <stdexcept>

#include "shortpulse/numeric_policy.hpp"
#include "shortpulse/quadrature.hpp"

namespace shortpulse {

namespace {

struct Residuals {
  Vec3 r1, r2a, r2b, sigma, quadratic;
};

Residuals residuals(std::span<const double> t, std::span<const Vec3> n, double tau_s) {
  const std::size_t m = t.size();
  const double tau_p = t.back();
  const double after = tau_p - tau_s;
  const Vec3& n0 = n.front();
  const Vec3& np = n.back();

  std::vector<Vec3> weighted(m), inner(m);
  for (std::size_t i = 0; i < m; ++i) weighted[i] = (t[i] - tau_s) * n[i];
  const std::vector<Vec3> running = cumulative_integral(t, n);
  for (std::size_t i = 0; i < m; ++i) inner[i] = n[i].cross(running[i]);

  Residuals r;
  r.sigma = running.back();
  const Vec3 first_moment = simpson(t, std::span<const Vec3>(weighted));
  const Vec3 ordered = simpson(t, std::span<const Vec3>(inner));
  const Vec3 ends_cross = np.cross(n0);

  r.r1 = r.sigma - (after * np + tau_s * n0);
  r.r2a = 2.0 * first_moment - (after * after * np - tau_s * tau_s * n0);
  r.r2b = ordered - tau_s * after * ends_cross;
  const Vec3 boundary = after * np - tau_s * n0;
  r.quadratic = tau_s * after * ends_cross - boundary.cross(r.sigma) + ordered;
  return r;
}

}  // namespace

CorrectionReport evaluate_corrections(const NTrajectory& ntraj, double tau_s) {
  const auto& t = ntraj.time();
  const auto& n = ntraj.nhat();
  if (t.size() < 16) throw std::invalid_argument("evaluate_corrections: need >= 16 grid nodes");
  const double tau_p = ntraj.tau_p();
  if (std::abs(t.front()) > 1e-12 * tau_p) {
    throw std::invalid_argument("evaluate_corrections: trajectory must start at t = 0");
  }
  if (!(tau_s >= 0.0 && tau_s <= tau_p)) {
    throw std::invalid_argument("evaluate_corrections: tau_s outside [0, tau_p]");
  }

  const Residuals fine = residuals(t, n, tau_s);

  // Every other node (last node always kept) for the Richardson estimate.
  std::vector<double> tc;
  std::vector<Vec3> nc;
  for (std::size_t i = 0; i < t.size(); i += 2) {
    tc.push_back(t[i]);
    nc.push_back(n[i]);
  }
  if (tc.back() != t.back()) {
    tc.push_back(t.back());
    nc.push_back(n.back());
  }
  const Residuals coarse = residuals(tc, nc, tau_s);

  const auto& policy = numeric_policy();
  CorrectionReport rep;
  rep.tau_p = tau_p;
  rep.tau_s = tau_s;
  rep.r1 = fine.r1;
  rep.r2a = fine.r2a;
  rep.r2b = fine.r2b;
  rep.r1_norm = fine.r1.norm();
  rep.r2a_norm = fine.r2a.norm();
  rep.r2b_norm = fine.r2b.norm();
  rep.r1_error = (fine.r1 - coarse.r1).norm() / 15.0;
  rep.r2a_error = (fine.r2a - coarse.r2a).norm() / 15.0;
  rep.r2b_error = (fine.r2b - coarse.r2b).norm() / 15.0;
  rep.sigma_integral = fine.sigma;
  rep.quadratic_term = fine.quadratic;

  const double floor1 = policy.quadrature_abs * tau_p;
  const double floor2 = policy.quadrature_abs * tau_p * tau_p;
  rep.converged = rep.r1_error <= policy.quadrature_rel * rep.r1_norm + floor1 &&
                  rep.r2a_error <= policy.quadrature_rel * rep.r2a_norm + floor2 &&
                  rep.r2b_error <= policy.quadrature_rel * rep.r2b_norm + floor2;
  rep.r2b_valid = rep.r1_norm <= policy.r2b_validity * tau_p;
  return rep;
}

EtaOperators eta_operators(const CorrectionReport& report, const BathModel& bath,
                           const NTrajectory& ntraj, double tau_s) {
  if (std::abs(ntraj.tau_p() - report.tau_p) > 1e-12 * report.tau_p ||
      std::abs(tau_s - report.tau_s) > 1e-12 * report.tau_p) {
    throw std::invalid_argument("eta_operators: trajectory does not match the report");
  }
  const ComplexMatrix& a = bath.a();
  const ComplexMatrix& hb = bath.h_b();
  if (a.rows() != a.cols() || hb.rows() != hb.cols() || a.rows() != hb.rows()) {
    throw std::invalid_argument("eta_operators: bath operator dimensions differ");
  }
  const double lambda = bath.lambda();
  const Complex half_i(0.0, 0.5);

  EtaOperators eta;
  eta.first = kron(lambda * a, pauli_dot(report.r1));
  eta.second_commutator = kron(half_i * lambda * bath.commutator(), pauli_dot(report.r2a));
  eta.second_quadratic = kron(lambda * lambda * (a * a), pauli_dot(report.quadratic_term));
  return eta;
}

NoGoDiagnostics nogo_diagnostics(const NTrajectory& ntraj, double tau_s) {
  const auto& t = ntraj.time();
  const auto& n = ntraj.nhat();
  const double tau_p = ntraj.tau_p();
  if (!(tau_s >= 0.0 && tau_s <= tau_p)) {
    throw std::invalid_argument("nogo_diagnostics: tau_s outside [0, tau_p]");
  }
  std::vector<double> cos_alpha(t.size()), moment(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    cos_alpha[i] = n[i].dot(n.front());
    moment[i] = (t[i] - tau_s) * cos_alpha[i];
  }
  NoGoDiagnostics d;
  d.tsp_gap = tau_p - simpson(t, cos_alpha);
  const double after = tau_p - tau_s;
  d.pi2_gap = after * after + tau_s * tau_s + 2.0 * simpson(t, moment);
  d.pi_condition_defect = (n.front() + n.back()).norm();
  d.pi_condition_holds = d.pi_condition_defect < numeric_policy().pi_condition_tol;
  return d;
}

}  // namespace shortpulse
