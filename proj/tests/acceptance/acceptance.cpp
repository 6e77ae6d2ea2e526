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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "shortpulse/bath.hpp"
#include "shortpulse/corrections.hpp"
#include "shortpulse/numeric_policy.hpp"
#include "shortpulse/optimizer.hpp"
#include "shortpulse/pulse.hpp"
#include "shortpulse/random_pulses.hpp"

namespace sp = shortpulse;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

sp::PulseShape constant_pi(double tau_p = 1.0) {
  sp::FourierSeries f;
  f.order = 0;
  f.cos[1] = {kPi / (2.0 * tau_p)};
  return sp::PulseShape::fourier(tau_p, tau_p / 2.0, kPi, f);
}

sp::CorrectionReport report_of(const sp::PulseShape& p, int grid) {
  return sp::evaluate_corrections(sp::n_trajectory(sp::integrate_axis_angle(p, grid)), p.tau_s());
}

const std::vector<double> kSweep = sp::log_space(1e-3, 1e-1, 6);

sp::DesignProblem design_problem(bool q_type) {
  sp::DesignProblem p;
  p.theta = kPi;
  p.order = 2;
  p.components = {false, true, false};
  p.symmetric = true;
  p.zero_derivatives = {1};
  p.targets = q_type ? std::vector<sp::Target>{sp::Target::r1, sp::Target::r2b}
                     : std::vector<sp::Target>{sp::Target::r1};
  p.restarts = 32;
  return p;
}

struct Designs {
  sp::DesignSolution s_type;
  sp::DesignSolution q_type;
  double seconds = 0.0;
};

const Designs& designs() {
  static const Designs d = [] {
    const auto start = std::chrono::steady_clock::now();
    Designs out{sp::solve(design_problem(false), 1), sp::solve(design_problem(true), 1)};
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }();
  return d;
}

bool within(double x, double centre, double band) { return std::abs(x - centre) <= band; }

Outcome closed_form() {
  const sp::CorrectionReport r = report_of(constant_pi(), 8192);
  const double e1 = std::abs(r.r1_normalized() - 2.0 / kPi);
  const double e2 = std::abs(r.r2a_normalized() - (0.5 - 4.0 / (kPi * kPi)));
  return {e1 <= 1e-6 && e2 <= 1e-6,
          fmt("|r1|/tp=%.9f (err %.1e) |r2a|/tp^2=%.9f (err %.1e)", r.r1_normalized(), e1,
              r.r2a_normalized(), e2)};
}

Outcome round_trip() {
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    sp::Rng rng = sp::make_rng(2002, static_cast<std::uint64_t>(s));
    const int order = 1 + s % 5;
    const double tau_p = 0.5 + 0.05 * s;
    const sp::PulseShape p = sp::random_fourier_pulse(rng, tau_p, 0.4 * tau_p, order, 0.5 * kPi, 3.0 * kPi);
    const sp::AxisAngleTrajectory tr = sp::integrate_axis_angle(p, 1024);
    const std::vector<sp::Vec3> v = sp::amplitude_from_axis_angle(tr);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const sp::Vec3 exact = p.amplitude(tr.time()[i]);
      err = std::max(err, (v[i] - exact).norm());
      scale = std::max(scale, exact.norm());
    }
    worst = std::max(worst, err / scale);
  }
  return {worst <= 1e-6, fmt("worst max|dv|/max|v| = %.2e over 50 pulses, 1024 nodes", worst)};
}

Outcome eta_norm() {
  std::mt19937_64 gen(3003);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    sp::Rng rng = sp::make_rng(3003, static_cast<std::uint64_t>(s));
    const sp::PulseShape p = sp::random_fourier_pulse(rng, 1.0, 0.2 + 0.006 * s, 1 + s % 4, 1.0, 6.0);
    sp::ComplexMatrix hb(2, 2), a(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        hb(i, j) = sp::Complex(g(gen), g(gen));
        a(i, j) = sp::Complex(g(gen), g(gen));
      }
    }
    const sp::BathModel bath =
        sp::BathModel::from_operators(hb + hb.adjoint(), a + a.adjoint(), 0.05 + std::abs(g(gen)));
    const sp::NTrajectory n = sp::n_trajectory(sp::integrate_axis_angle(p, 1024));
    const sp::CorrectionReport r = sp::evaluate_corrections(n, p.tau_s());
    const sp::EtaOperators eta = sp::eta_operators(r, bath, n, p.tau_s());
    const double expect = bath.lambda() * sp::operator_norm(bath.a()) * r.r1_norm;
    worst = std::max(worst, std::abs(sp::operator_norm(eta.first) - expect) / expect);
  }
  return {worst <= 1e-8, fmt("worst relative mismatch %.2e over 100 pairs", worst)};
}

Outcome slopes() {
  const sp::BathModel dephasing = sp::BathModel::preset("spin-dephasing", 1.0, 1.0);
  const sp::BathModel ising = sp::BathModel::preset("spin-ising", 1.0, 1.0);
  const Designs& d = designs();
  if (!d.s_type.converged || !d.q_type.converged) return {false, "designs did not converge"};
  const sp::MagnusSweep bare = sp::magnus_consistency(constant_pi(), dephasing, kSweep);
  const sp::MagnusSweep first = sp::magnus_consistency(d.s_type.shape, dephasing, kSweep);
  const sp::MagnusSweep full = sp::magnus_consistency(d.q_type.shape, ising, kSweep);
  const bool ok = within(bare.uf.slope, 1.0, 0.15) && within(first.uf.slope, 2.0, 0.15) &&
                  within(full.uf.slope, 3.0, 0.2) && first.magnus.slope >= 2.7 &&
                  bare.magnus.slope >= 2.7;
  return {ok, fmt("uncorrected %.4f, r1-zeroed %.4f, fully corrected %.4f, magnus %.4f/%.4f",
                  bare.uf.slope, first.uf.slope, full.uf.slope, bare.magnus.slope,
                  first.magnus.slope)};
}

Outcome nogo() {
  const double tol = sp::numeric_policy().nogo_tol;
  double min_tsp = 1e300, min_pi2 = 1e300;
  for (int s = 0; s < 1000; ++s) {
    sp::Rng rng = sp::make_rng(5005, static_cast<std::uint64_t>(s));
    const sp::PulseShape p =
        sp::random_fourier_pulse(rng, 1.0, 1.0, 1 + s % 4, 0.5 * kPi, 3.0 * kPi);
    const sp::NTrajectory n = sp::n_trajectory(sp::integrate_axis_angle(p, 512));
    min_tsp = std::min(min_tsp, sp::nogo_diagnostics(n, p.tau_s()).tsp_gap);
  }
  int skipped = 0;
  for (int s = 0; s < 1000; ++s) {
    sp::Rng rng = sp::make_rng(5006, static_cast<std::uint64_t>(s));
    const sp::PulseShape p = sp::random_pi_conditioned_pulse(rng, 1.0, 4);
    const sp::NTrajectory n = sp::n_trajectory(sp::integrate_axis_angle(p, 512));
    const sp::NoGoDiagnostics g = sp::nogo_diagnostics(n, p.tau_s());
    if (!g.pi_condition_holds) {
      ++skipped;
      continue;
    }
    min_pi2 = std::min(min_pi2, g.pi2_gap);
  }

  sp::DesignProblem tsp;
  tsp.theta = kPi;
  tsp.tau_s = 1.0;
  tsp.order = 2;
  tsp.components = {true, true, true};
  tsp.max_iterations = 80;
  sp::DesignProblem pi2 = tsp;
  pi2.tau_s = 0.5;
  pi2.targets = {sp::Target::r1, sp::Target::r2a};
  const sp::FeasibilityCertificate c1 = sp::feasibility_probe(tsp, 4, 7);
  const sp::FeasibilityCertificate c2 = sp::feasibility_probe(pi2, 4, 7);
  const bool probes = c1.gap_bound && c2.gap_bound && c1.holds() && c2.holds();
  const bool ok = min_tsp >= -tol && min_pi2 >= -tol && skipped == 0 && probes;
  return {ok, fmt("min tsp_gap %.3e, min pi2_gap %.3e (%d skipped); probes %.3e>=%.3e, %.3e>=%.3e",
                  min_tsp, min_pi2, skipped, c1.best_objective,
                  c1.gap_bound ? *c1.gap_bound * *c1.gap_bound : -1.0, c2.best_objective,
                  c2.gap_bound ? *c2.gap_bound * *c2.gap_bound : -1.0)};
}

Outcome dephasing_identity() {
  const sp::BathModel bath = sp::BathModel::preset("static-dephasing", 0.0, 1.0);
  const sp::ComplexMatrix ideal = sp::ideal_pulse(kPi);
  double identity = 0.0, assembled_defect = 0.0, coincidence = 0.0;
  for (double tau_p : kSweep) {
    const sp::PulseShape p = constant_pi(tau_p);
    const sp::ComplexMatrix half = sp::exp_hermitian(bath.joint_hamiltonian(), tau_p / 2.0);
    identity = std::max(identity, sp::operator_norm(half * ideal * half - ideal));
    const sp::ComplexMatrix assembled = half * bath.lift_qubit(sp::pulse_endpoints(p, 4096).total()) * half;
    assembled_defect = std::max(assembled_defect, sp::decomposition_defect(assembled, p, bath));
    const sp::JointPropagator j = sp::propagate_joint(p, bath, 4096);
    const double bare =
        std::min(sp::operator_norm(j.unitary - ideal), sp::operator_norm(j.unitary + ideal));
    coincidence = std::max(coincidence, std::abs(sp::decomposition_defect(j.unitary, p, bath) - bare));
  }
  const bool ok = identity <= 1e-8 && assembled_defect <= 1e-8 && coincidence <= 1e-8;
  return {ok, fmt("max |e^{-iHt/2} P e^{-iHt/2} - P| %.1e, defect with U_F = 1 %.1e, "
                  "|defect - |U_p - P|| %.1e over %zu durations",
                  identity, assembled_defect, coincidence, kSweep.size())};
}

Outcome designs_found() {
  const Designs& d = designs();
  const sp::DesignProblem sp_ = design_problem(false);
  const sp::DesignProblem qp = design_problem(true);
  const bool found = d.s_type.converged && d.q_type.converged &&
                     d.s_type.restarts_used <= sp_.restarts && d.q_type.restarts_used <= qp.restarts;
  if (!found) return {false, "no converged design within 32 restarts"};
  const sp::MagnusSweep s =
      sp::magnus_consistency(d.s_type.shape, sp::BathModel::preset("spin-dephasing", 1.0, 1.0), kSweep);
  const sp::MagnusSweep q =
      sp::magnus_consistency(d.q_type.shape, sp::BathModel::preset("spin-ising", 1.0, 1.0), kSweep);
  const bool ok = within(s.uf.slope, 2.0, 0.15) && within(q.uf.slope, 3.0, 0.2);
  return {ok, fmt("S-type restarts %d slope %.4f; Q-type restarts %d slope %.4f; solves %.2f s",
                  d.s_type.restarts_used, s.uf.slope, d.q_type.restarts_used, q.uf.slope, d.seconds)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form constant pi residuals", 1.0, closed_form},
      {2, "amplitude/axis-angle round trip", 10.0, round_trip},
      {3, "eta1 operator norm equals lambda |A| |r1|", 30.0, eta_norm},
      {4, "expansion-order slopes", 120.0, slopes},
      {5, "no-go gaps and feasibility probes", 120.0, nogo},
      {6, "static dephasing identity", 5.0, dephasing_identity},
      {7, "S-type and Q-type designs", 120.0, designs_found},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double charged = c.id == 7 ? secs + designs().seconds : c.id == 4 ? secs - designs().seconds : secs;
    const bool pass = o.pass && charged <= c.budget_s;
    if (!pass) ++failures;
    std::printf("%s criterion %d: %s | %s | %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), charged, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
