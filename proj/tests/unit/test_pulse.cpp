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


#include "shortpulse/pulse.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shortpulse/random_pulses.hpp"

namespace shortpulse {
namespace {

constexpr double kPi = std::numbers::pi;

PulseShape constant_pi(double tau_p = 1.0) {
  FourierSeries f;
  f.order = 0;
  f.cos[1] = {kPi / (2.0 * tau_p)};
  return PulseShape::fourier(tau_p, tau_p / 2.0, kPi, f);
}

double su2_distance(const SU2& a, const Matrix2c& b) {
  return std::min((a.matrix() - b).norm(), (a.matrix() + b).norm());
}

TEST(PulseShape, DefaultIsNoPulse) {
  const PulseShape p;
  EXPECT_EQ(p.representation(), Representation::fourier);
  EXPECT_EQ(p.tau_p(), 1.0);
  EXPECT_EQ(p.tau_s(), 0.5);
  EXPECT_EQ(p.amplitude(0.3), Vec3::Zero());
}

TEST(PulseShape, RepresentationNames) {
  for (auto r : {Representation::fourier, Representation::piecewise_constant,
                 Representation::axis_angle_samples}) {
    EXPECT_EQ(representation_from_string(to_string(r)), r);
  }
  EXPECT_THROW(representation_from_string("spline"), std::invalid_argument);
}

TEST(PulseShape, ConstructorsValidate) {
  FourierSeries bad;
  bad.order = 1;
  bad.cos[0] = {1.0};
  EXPECT_THROW(PulseShape::fourier(1.0, 0.5, 0.0, bad), std::invalid_argument);
  EXPECT_THROW(PulseShape::fourier(1.0, 1.5, 0.0, FourierSeries{}), std::invalid_argument);
  EXPECT_THROW(PulseShape::fourier(-1.0, 0.0, 0.0, FourierSeries{}), std::invalid_argument);
  EXPECT_THROW(PulseShape::piecewise_constant(1.0, 0.5, 0.0, {{0.0, 0.4, Vec3::Zero()}}),
               std::invalid_argument);
  EXPECT_THROW(PulseShape::piecewise_constant(
                   1.0, 0.5, 0.0, {{0.0, 0.4, Vec3::Zero()}, {0.5, 1.0, Vec3::Zero()}}),
               std::invalid_argument);
  EXPECT_THROW(eval_amplitude(constant_pi(), 1.5), std::out_of_range);
}

TEST(PulseShape, FourierEvaluation) {
  FourierSeries f;
  f.order = 2;
  f.cos[0] = {0.5, 1.0, -2.0};
  f.sin[0] = {3.0, 0.25};
  const PulseShape p = PulseShape::fourier(2.0, 1.0, 0.0, f);
  const double t = 0.37, w = kPi;
  const double expect = 0.5 + std::cos(w * t) - 2.0 * std::cos(2 * w * t) + 3.0 * std::sin(w * t) +
                        0.25 * std::sin(2 * w * t);
  EXPECT_NEAR(p.amplitude(t)(0), expect, 1e-14);
  EXPECT_EQ(p.amplitude(t)(1), 0.0);
}

TEST(PulseShape, DerivativesMatchFiniteDifferences) {
  Rng rng = make_rng(5, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.3, 0.6, 3, 1.0, 2.0);
  const double top = 3.0 * 2.0 * kPi / 1.3;
  const double h = 1e-5;
  for (double t : {0.2, 0.77, 1.1}) {
    for (int m = 1; m <= 3; ++m) {
      const Vec3 fd =
          (amplitude_derivative(p, t + h, m - 1) - amplitude_derivative(p, t - h, m - 1)) / (2 * h);
      const Vec3 exact = amplitude_derivative(p, t, m);
      EXPECT_LT((fd - exact).norm(), 1e-7 * std::pow(top, m + 2)) << t << " " << m;
    }
  }
  EXPECT_EQ(amplitude_derivative(p, 0.4, 0), p.amplitude(0.4));
  EXPECT_THROW(amplitude_derivative(p, 0.1, -1), std::invalid_argument);
  const PulseShape pw = PulseShape::piecewise_constant(1.0, 0.5, 0.0, {{0.0, 1.0, Vec3::UnitX()}});
  EXPECT_THROW(amplitude_derivative(pw, 0.1, 1), std::invalid_argument);
}

TEST(PulseShape, RescaledKeepsTheRotation) {
  Rng rng = make_rng(6, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.0, 0.3, 2, 1.0, 3.0);
  const PulseShape q = p.rescaled(0.01);
  EXPECT_DOUBLE_EQ(q.tau_p(), 0.01);
  EXPECT_NEAR(q.tau_s(), 0.003, 1e-15);
  EXPECT_LT((q.amplitude(0.004) - 100.0 * p.amplitude(0.4)).norm(), 1e-9);
  const SU2 a = integrate_axis_angle(p, 512).total_rotation();
  const SU2 b = integrate_axis_angle(q, 512).total_rotation();
  EXPECT_LT((a.matrix() - b.matrix()).norm(), 1e-12);
}

TEST(TimeGrid, ContainsSplitAndBreakpoints) {
  const PulseShape p = PulseShape::piecewise_constant(
      1.0, 0.31, 0.0, {{0.0, 0.2, Vec3::UnitX()}, {0.2, 0.7, Vec3::UnitY()}, {0.7, 1.0, Vec3::UnitZ()}});
  const TimeGrid g = make_time_grid(p, 100);
  EXPECT_EQ(g.t.front(), 0.0);
  EXPECT_EQ(g.t.back(), 1.0);
  EXPECT_EQ(g.t[g.split], 0.31);
  for (double b : {0.2, 0.7}) {
    EXPECT_NE(std::find(g.t.begin(), g.t.end(), b), g.t.end()) << b;
  }
  for (std::size_t i = 1; i < g.t.size(); ++i) EXPECT_GT(g.t[i], g.t[i - 1]);
}

TEST(AxisAngle, ConstantPulseClosedForm) {
  const AxisAngleTrajectory tr = integrate_axis_angle(constant_pi(), 256);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double t = tr.time()[i];
    EXPECT_NEAR(tr.psi()[i], kPi * (t - 0.5), 1e-9);
    if (std::abs(t - 0.5) > 1e-3) {
      EXPECT_LT((tr.axis()[i] - Vec3::UnitY()).norm(), 1e-9);
    }
  }
  EXPECT_NEAR(tr.psi().back() - tr.psi().front(), kPi, 1e-8);
  const NTrajectory n = n_trajectory(tr);
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double psi = kPi * (tr.time()[i] - 0.5);
    EXPECT_LT((n.nhat()[i] - Vec3(-std::sin(psi), 0.0, std::cos(psi))).norm(), 1e-9);
  }
}

TEST(AxisAngle, RotationsMatchIndependentPropagator) {
  for (int s = 0; s < 5; ++s) {
    Rng rng = make_rng(7, static_cast<std::uint64_t>(s));
    const PulseShape p = random_fourier_pulse(rng, 1.0, 0.2 * s + 0.1, 1 + s % 4, 1.0, 6.0);
    const AxisAngleTrajectory tr = integrate_axis_angle(p, 2048);
    const auto v = oracle::amplitude_of(p);
    const Matrix2c us = oracle::propagate(v, 0.0, p.tau_s(), 1600);
    EXPECT_EQ(tr.psi()[make_time_grid(p, 2048).split], 0.0);
    for (std::size_t i = 0; i < tr.size(); i += 97) {
      const Matrix2c u = oracle::propagate(v, 0.0, tr.time()[i], 1600) * us.adjoint();
      EXPECT_LT(su2_distance(tr.rotation(i), u), 1e-9) << s << " " << i;
    }
  }
}

TEST(AxisAngle, FrameIsContinuous) {
  Rng rng = make_rng(8, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.0, 0.5, 3, 8.0, 10.0);
  const AxisAngleTrajectory tr = integrate_axis_angle(p, 1024);
  for (std::size_t i = 1; i < tr.size(); ++i) {
    EXPECT_LT(std::abs(tr.psi()[i] - tr.psi()[i - 1]), 0.2);
    EXPECT_GT(tr.axis()[i].dot(tr.axis()[i - 1]), 0.9);
    EXPECT_NEAR(tr.axis()[i].norm(), 1.0, 1e-12);
  }
}

TEST(AxisAngle, FourthOrderConvergence) {
  Rng rng = make_rng(9, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.0, 0.5, 2, 3.0, 4.0);
  const Matrix2c exact = oracle::propagate(oracle::amplitude_of(p), 0.0, 1.0, 2000);
  auto error = [&](int steps) {
    return su2_distance(integrate_axis_angle(p, steps).total_rotation(), exact);
  };
  const double e1 = error(64), e2 = error(128), e3 = error(256);
  EXPECT_GT(e1 / e2, 12.0);
  EXPECT_GT(e2 / e3, 12.0);
  EXPECT_THROW(integrate_axis_angle(p, 32), std::invalid_argument);
}

TEST(AxisAngle, RoundTripRecoversTheAmplitude) {
  for (int s = 0; s < 10; ++s) {
    Rng rng = make_rng(10, static_cast<std::uint64_t>(s));
    const int order = 1 + s % 5;
    const PulseShape p = random_fourier_pulse(rng, 1.0, 0.5, order, 0.5 * kPi, 3.0 * kPi);
    const AxisAngleTrajectory tr = integrate_axis_angle(p, 1024);
    const std::vector<Vec3> v = amplitude_from_axis_angle(tr);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      err = std::max(err, (v[i] - p.amplitude(tr.time()[i])).norm());
      scale = std::max(scale, p.amplitude(tr.time()[i]).norm());
    }
    EXPECT_LE(err, 1e-6 * scale) << s;
  }
}

TEST(AxisAngle, AmplitudeProjectsOntoHalfAngleRate) {
  Rng rng = make_rng(11, 0);
  const PulseShape p = random_fourier_pulse(rng, 1.0, 0.4, 3, 2.0, 5.0);
  const AxisAngleTrajectory tr = integrate_axis_angle(p, 1024);
  const CubicSpline psi(tr.time(), tr.psi());
  for (std::size_t i = 0; i < tr.size(); i += 13) {
    EXPECT_NEAR(p.amplitude(tr.time()[i]).dot(tr.axis()[i]), 0.5 * psi.knot_slope(i), 1e-6);
  }
}

TEST(AxisAngle, SampledPulseReproducesItsSamples) {
  const AxisAngleTrajectory tr = integrate_axis_angle(constant_pi(), 128);
  std::vector<AxisAngleSample> samples;
  for (std::size_t i = 0; i < tr.size(); ++i) samples.push_back({tr.time()[i], tr.axis()[i], tr.psi()[i]});
  const PulseShape s = PulseShape::axis_angle_samples(1.0, 0.5, kPi, samples);
  const AxisAngleTrajectory back = trajectory_from_samples(s);
  EXPECT_EQ(back.psi(), tr.psi());
  EXPECT_LT((s.amplitude(0.3) - Vec3(0.0, kPi / 2.0, 0.0)).norm(), 1e-6);
  EXPECT_THROW(s.fourier_series(), std::logic_error);
}

TEST(AxisAngle, PiecewiseMatchesEquivalentFourier) {
  const PulseShape pw = PulseShape::piecewise_constant(
      1.0, 0.5, kPi, {{0.0, 0.3, Vec3(0.0, kPi / 2.0, 0.0)}, {0.3, 1.0, Vec3(0.0, kPi / 2.0, 0.0)}});
  const AxisAngleTrajectory a = integrate_axis_angle(pw, 512);
  const AxisAngleTrajectory b = integrate_axis_angle(constant_pi(), 512);
  EXPECT_LT((a.total_rotation().matrix() - b.total_rotation().matrix()).norm(), 1e-10);
}

TEST(AxisAngle, AmplitudeMatchesTheAxisAngleFormula) {
  const auto axis = [](double t) { return Vec3(std::cos(t), std::sin(2.0 * t), 1.0).normalized(); };
  const auto psi = [](double t) { return 3.0 * t * t - 1.0; };
  std::vector<double> ts;
  std::vector<Vec3> as;
  std::vector<double> ps;
  for (int i = 0; i <= 2048; ++i) {
    ts.push_back(2.0 * i / 2048.0);
    as.push_back(axis(ts.back()));
    ps.push_back(psi(ts.back()));
  }
  const AxisAngleTrajectory tr(ts, as, ps, 1.0 / std::sqrt(3.0));
  const std::vector<Vec3> v = amplitude_from_axis_angle(tr);
  const double h = 1e-5;
  for (std::size_t i = 0; i < ts.size(); i += 64) {
    const double t = ts[i];
    const Vec3 a = axis(t);
    const Vec3 da = (axis(t + h) - axis(t - h)) / (2.0 * h);
    const Vec3 expect = 0.5 * (6.0 * t * a + std::sin(psi(t)) * da - (1.0 - std::cos(psi(t))) * da.cross(a));
    EXPECT_LT((v[i] - expect).norm(), 1e-7) << t;
  }
}

TEST(AxisAngle, RoundTripNeedsSixteenNodes) {
  const AxisAngleTrajectory tr({0.0, 0.5, 1.0}, {Vec3::UnitY(), Vec3::UnitY(), Vec3::UnitY()},
                               {0.0, 0.1, 0.2}, 0.0);
  EXPECT_THROW(amplitude_from_axis_angle(tr), std::invalid_argument);
}

}  // namespace
}  // namespace shortpulse
