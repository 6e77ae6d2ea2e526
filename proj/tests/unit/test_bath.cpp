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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shortpulse/random_pulses.hpp"

namespace shortpulse {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

PulseShape constant_pi(double tau_p = 1.0) {
  FourierSeries f;
  f.order = 0;
  f.cos[1] = {kPi / (2.0 * tau_p)};
  return PulseShape::fourier(tau_p, tau_p / 2.0, kPi, f);
}

ComplexMatrix lifted_pulse(const BathModel& bath, const Vec3& v) {
  return kron(ComplexMatrix::Identity(bath.dim_b(), bath.dim_b()), pauli_dot(v));
}

// Joint propagator by fourth-order Magnus steps with the general exponential.
ComplexMatrix joint_oracle(const PulseShape& shape, const BathModel& bath, int steps) {
  const ComplexMatrix h = bath.joint_hamiltonian();
  const double dt = shape.tau_p() / steps;
  const double c = std::sqrt(3.0) / 6.0;
  ComplexMatrix u = ComplexMatrix::Identity(h.rows(), h.cols());
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const ComplexMatrix h1 = h + lifted_pulse(bath, shape.amplitude(t + (0.5 - c) * dt));
    const ComplexMatrix h2 = h + lifted_pulse(bath, shape.amplitude(t + (0.5 + c) * dt));
    const ComplexMatrix omega =
        -kI * (dt / 2.0) * (h1 + h2) + (std::sqrt(3.0) / 12.0) * dt * dt * (h1 * h2 - h2 * h1);
    u = expm(omega) * u;
  }
  return u;
}

TEST(BathModel, PresetsAndNormalization) {
  const BathModel dephasing = BathModel::preset("spin-dephasing", 2.0, 0.5);
  EXPECT_EQ(dephasing.dim_b(), 2);
  EXPECT_EQ(dephasing.joint_dim(), 4);
  EXPECT_TRUE(dephasing.dynamic());
  EXPECT_FALSE(BathModel::preset("spin-ising", 2.0, 0.5).dynamic());
  const BathModel stat = BathModel::preset("static-dephasing", 0.0, 0.7);
  EXPECT_EQ(stat.dim_b(), 1);
  EXPECT_LT((stat.joint_hamiltonian() - 0.7 * ComplexMatrix(pauli()[2])).norm(), 1e-15);
  EXPECT_THROW(BathModel::preset("heat-bath", 1.0, 1.0), std::invalid_argument);

  const BathModel scaled = BathModel::from_operators(pauli()[2], 4.0 * pauli()[0], 0.25);
  EXPECT_NEAR(operator_norm(scaled.a()), 1.0, 1e-14);
  EXPECT_NEAR(scaled.lambda(), 1.0, 1e-14);
  const ComplexMatrix expect = kron(pauli()[2], Matrix2c::Identity()) + kron(pauli()[0], pauli()[2]);
  EXPECT_LT((scaled.joint_hamiltonian() - expect).norm(), 1e-14);
}

TEST(BathModel, RejectsInvalidOperators) {
  ComplexMatrix non_hermitian = pauli()[0];
  non_hermitian(0, 1) = Complex(2.0, 0.0);
  EXPECT_THROW(BathModel::from_operators(non_hermitian, pauli()[0], 1.0), std::invalid_argument);
  EXPECT_THROW(BathModel::from_operators(pauli()[2], ComplexMatrix::Identity(3, 3), 1.0),
               std::invalid_argument);
  EXPECT_THROW(BathModel::from_operators(pauli()[2], ComplexMatrix::Zero(2, 2), 1.0),
               std::invalid_argument);
  EXPECT_THROW(BathModel::from_operators(ComplexMatrix::Identity(17, 17),
                                         ComplexMatrix::Identity(17, 17), 1.0),
               std::invalid_argument);
}

TEST(IdealPulse, Convention) {
  for (double theta : {0.3, kPi / 2.0, kPi}) {
    const Matrix2c expect =
        std::cos(theta / 2.0) * Matrix2c::Identity() + kI * std::sin(theta / 2.0) * pauli()[1];
    EXPECT_LT((ideal_pulse(theta) - expect).norm(), 1e-14);
  }
}

// Piecewise-constant pulses make H constant on every grid interval, so the
// product of exact segment exponentials is the exact propagator.
TEST(PropagateJoint, ExactOnPiecewiseConstantPulses) {
  const BathModel bath = BathModel::preset("spin-dephasing", 1.3, 0.7);
  const std::vector<Segment> segs = {{0.0, 0.25, Vec3(1.0, -2.0, 0.5)},
                                     {0.25, 0.6, Vec3(0.0, 3.0, 1.0)},
                                     {0.6, 1.0, Vec3(-1.5, 0.0, 2.0)}};
  const PulseShape p = PulseShape::piecewise_constant(1.0, 0.4, 0.0, segs);
  ComplexMatrix exact = ComplexMatrix::Identity(4, 4);
  for (const auto& s : segs) {
    exact = exp_hermitian(bath.joint_hamiltonian() + lifted_pulse(bath, s.amplitude), s.end - s.begin) * exact;
  }
  const JointPropagator j = propagate_joint(p, bath, 256);
  EXPECT_LT(operator_norm(j.unitary - exact), 1e-12);
  EXPECT_LT(j.richardson_error, 1e-13);
  EXPECT_EQ(j.steps, 256);
}

TEST(PropagateJoint, MatchesIndependentStepper) {
  for (int s = 0; s < 4; ++s) {
    Rng rng = make_rng(31, static_cast<std::uint64_t>(s));
    const PulseShape p = random_fourier_pulse(rng, 0.8, 0.3, 1 + s, 1.0, 5.0);
    const BathModel bath = BathModel::preset(s % 2 ? "spin-ising" : "spin-dephasing", 1.0, 1.0);
    const JointPropagator j = propagate_joint(p, bath, 512);
    EXPECT_LT(operator_norm(j.unitary - joint_oracle(p, bath, 3000)), 1e-11) << s;
    EXPECT_TRUE(is_unitary(j.unitary, 1e-12));
  }
  EXPECT_THROW(propagate_joint(constant_pi(), BathModel::preset("spin-ising", 1.0, 1.0), 128),
               std::invalid_argument);
}

TEST(PropagateJoint, SixthOrderConvergence) {
  Rng rng = make_rng(32, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.0, 0.5, 3, 20.0, 25.0);
  const BathModel bath = BathModel::preset("spin-dephasing", 1.0, 1.0);
  const ComplexMatrix ref = propagate_joint(p, bath, 8192).unitary;
  const double e1 = operator_norm(propagate_joint(p, bath, 256).unitary - ref);
  const double e2 = operator_norm(propagate_joint(p, bath, 512).unitary - ref);
  EXPECT_GT(e1 / e2, 48.0);
}

TEST(ReconstructUF, TwoRoutesAgree) {
  for (const char* name : {"spin-dephasing", "spin-ising"}) {
    const BathModel bath = BathModel::preset(name, 1.0, 1.0);
    Rng rng = make_rng(33, 0);
    const PulseShape p = random_fourier_pulse(rng, 0.05, 0.02, 2, 2.0, 4.0);
    const JointPropagator j = propagate_joint(p, bath, 1024);
    const ComplexMatrix a = reconstruct_uf(j.unitary, j.endpoints, p, bath);
    const ComplexMatrix b = uf_interaction_picture(p, bath, 1024);
    EXPECT_LT(operator_norm(a - b), 1e-9) << name;
    EXPECT_LT(operator_norm(a - reconstruct_uf(j.unitary, p, bath, 1024)), 1e-13);
  }
}

TEST(ReconstructUF, RejectsForeignPropagators) {
  const BathModel bath = BathModel::preset("spin-ising", 1.0, 1.0);
  EXPECT_THROW(reconstruct_uf(ComplexMatrix::Identity(2, 2), constant_pi(), bath),
               std::invalid_argument);
  EXPECT_THROW(reconstruct_uf(2.0 * ComplexMatrix::Identity(4, 4), constant_pi(), bath),
               std::invalid_argument);
}

TEST(FGenerator, HermitianAndZeroAtTheSplit) {
  const BathModel bath = BathModel::preset("spin-dephasing", 1.0, 1.0);
  Rng rng = make_rng(34, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.0, 0.35, 2, 2.0, 4.0);
  EXPECT_LT(operator_norm(f_generator(p, bath, 0.35)), 1e-12);
  const ComplexMatrix f = f_generator(p, bath, 0.8);
  EXPECT_TRUE(is_hermitian(f, 1e-12));
  EXPECT_GT(operator_norm(f), 1e-3);
  EXPECT_THROW(f_generator(p, bath, 1.5), std::out_of_range);
  EXPECT_LT(operator_norm(f_generator(p, BathModel::preset("spin-dephasing", 1.0, 0.0), 0.8)),
            1e-12);
}

// H = lambda sigma_z: the ideal pi pulse anticommutes with the coupling, so
// the free evolution on both sides cancels and the decomposition with U_F = 1
// is the bare pulse rotation for every tau_p.
TEST(DecompositionDefect, StaticDephasingIdentity) {
  const BathModel bath = BathModel::preset("static-dephasing", 0.0, 1.0);
  const ComplexMatrix ideal = ideal_pulse(kPi);
  for (double tau_p : {1e-3, 1e-2, 1e-1}) {
    const PulseShape p = constant_pi(tau_p);
    const ComplexMatrix h = bath.joint_hamiltonian();
    const ComplexMatrix half = exp_hermitian(h, tau_p / 2.0);
    EXPECT_LT(operator_norm(half * ideal * half - ideal), 1e-14);

    const PulseEndpoints ends = pulse_endpoints(p, 1024);
    const ComplexMatrix assembled = half * bath.lift_qubit(ends.total()) * half;
    EXPECT_LT(decomposition_defect(assembled, p, bath), 1e-8) << tau_p;

    const JointPropagator j = propagate_joint(p, bath, 1024);
    const double bare = std::min(operator_norm(j.unitary - ideal), operator_norm(j.unitary + ideal));
    EXPECT_NEAR(decomposition_defect(j.unitary, p, bath), bare, 1e-8) << tau_p;
  }
}

TEST(DecompositionDefect, SignFree) {
  const BathModel bath = BathModel::preset("static-dephasing", 0.0, 0.0);
  const PulseShape p = constant_pi();
  const ComplexMatrix u = propagate_joint(p, bath, 512).unitary;
  EXPECT_LT(decomposition_defect(u, p, bath), 1e-12);
  EXPECT_LT(decomposition_defect(-u, p, bath), 1e-12);
  EXPECT_GT(decomposition_defect(-u, p, bath, false) + decomposition_defect(u, p, bath, false), 1.9);
}

TEST(DecompositionError, MagnusDefectIsThirdOrder) {
  const BathModel bath = BathModel::preset("spin-dephasing", 1.0, 1.0);
  const DecompositionError a = decomposition_error(constant_pi(0.02), bath);
  const DecompositionError b = decomposition_error(constant_pi(0.01), bath);
  EXPECT_NEAR(a.uf_defect / b.uf_defect, 2.0, 0.05);
  EXPECT_NEAR(a.magnus_defect / b.magnus_defect, 8.0, 0.5);
  EXPECT_NEAR(a.uf_defect, a.defect, 1e-12);
  EXPECT_LT(a.propagation_error, 1e-14);
}

TEST(LogLogFit, RecoversPowerLaws) {
  const std::vector<double> x = log_space(1e-3, 1e-1, 6);
  ASSERT_EQ(x.size(), 6u);
  EXPECT_DOUBLE_EQ(x.front(), 1e-3);
  EXPECT_NEAR(x.back(), 1e-1, 1e-17);
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  const SlopeFit f = loglog_fit(x, y);
  EXPECT_NEAR(f.slope, 3.0, 1e-12);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-10);
  EXPECT_LT(f.slope_stderr, 1e-10);
  EXPECT_EQ(f.points, 6);

  y[2] *= 1.5;
  EXPECT_GT(loglog_fit(x, y).slope_stderr, 1e-3);
}

TEST(LogLogFit, FailureModes) {
  EXPECT_THROW(loglog_fit({1.0}, {1.0}), FitError);
  EXPECT_THROW(loglog_fit({1.0, 2.0}, {0.0, 1.0}), FitError);
  EXPECT_THROW(loglog_fit({1.0, 2.0}, {-1.0, 1.0}), FitError);
  EXPECT_THROW(loglog_fit({2.0, 2.0}, {1.0, 3.0}), FitError);
  EXPECT_THROW(loglog_fit({1.0, 2.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(log_space(0.0, 1.0, 4), std::invalid_argument);
}

TEST(MagnusConsistency, ValidatesTheSweep) {
  const BathModel bath = BathModel::preset("spin-dephasing", 1.0, 1.0);
  EXPECT_THROW(magnus_consistency(constant_pi(), bath, {1e-3, 1e-2, 1e-1}), std::invalid_argument);
  EXPECT_THROW(magnus_consistency(constant_pi(), bath, log_space(1e-3, 5e-3, 5)),
               std::invalid_argument);
}

TEST(MagnusConsistency, UncoupledBathLeavesOnlyRoundoff) {
  const BathModel bath = BathModel::preset("spin-ising", 1.0, 0.0);
  try {
    const MagnusSweep s = magnus_consistency(PulseShape(), bath, log_space(1e-3, 1e-1, 4), 512);
    for (const DecompositionError& p : s.points) {
      EXPECT_LT(p.uf_defect, 1e-12);
      EXPECT_LT(p.defect, 1e-12);
    }
  } catch (const FitError&) {
    SUCCEED();
  }
}

TEST(MagnusConsistency, UncorrectedPulseIsFirstOrder) {
  const BathModel bath = BathModel::preset("spin-dephasing", 1.0, 1.0);
  const MagnusSweep s = magnus_consistency(constant_pi(), bath, log_space(1e-3, 1e-1, 6), 1024);
  ASSERT_EQ(s.points.size(), 6u);
  EXPECT_NEAR(s.uf.slope, 1.0, 0.05);
  EXPECT_GE(s.magnus.slope, 2.7);
  for (std::size_t i = 1; i < s.points.size(); ++i) EXPECT_GT(s.points[i].tau_p, s.points[i - 1].tau_p);
}

}  // namespace
}  // namespace shortpulse
