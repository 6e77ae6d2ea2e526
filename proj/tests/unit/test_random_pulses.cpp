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


#include "shortpulse/random_pulses.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shortpulse/corrections.hpp"
#include "shortpulse/quadrature.hpp"

namespace shortpulse {
namespace {

constexpr double kPi = std::numbers::pi;

double area(const PulseShape& p) {
  std::vector<double> t, y;
  for (int i = 0; i <= 4000; ++i) {
    t.push_back(p.tau_p() * i / 4000.0);
    y.push_back(p.amplitude(t.back()).norm());
  }
  return simpson(t, y);
}

TEST(RandomPulses, StreamsAreReproducibleAndDistinct) {
  Rng a = make_rng(3, 4), b = make_rng(3, 4), c = make_rng(3, 5), d = make_rng(4, 4);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(RandomPulses, FourierAreaInRange) {
  for (int s = 0; s < 50; ++s) {
    Rng rng = make_rng(41, static_cast<std::uint64_t>(s));
    const PulseShape p = random_fourier_pulse(rng, 2.0, 0.7, 1 + s % 5, 1.0, 3.0);
    EXPECT_EQ(p.fourier_series().order, 1 + s % 5);
    EXPECT_EQ(p.tau_s(), 0.7);
    const double a = area(p);
    EXPECT_GE(a, 1.0 - 1e-6);
    EXPECT_LE(a, 3.0 + 1e-6);
  }
}

TEST(RandomPulses, PiConditionedPulsesSatisfyTheCondition) {
  for (int s = 0; s < 100; ++s) {
    Rng rng = make_rng(42, static_cast<std::uint64_t>(s));
    const PulseShape p = random_pi_conditioned_pulse(rng, 1.0, 4);
    EXPECT_EQ(p.representation(), Representation::piecewise_constant);
    EXPECT_DOUBLE_EQ(p.theta(), kPi);
    EXPECT_EQ(p.segments().size(), 33u);
    const SU2 u = piecewise_total_rotation(p);
    const Vec3 z = pauli_conjugate(u.matrix()).matrix().row(2).transpose();
    EXPECT_LT((z + Vec3::UnitZ()).norm(), 1e-12) << s;
    const NoGoDiagnostics d = nogo_diagnostics(n_trajectory(integrate_axis_angle(p, 2048)), p.tau_s());
    EXPECT_LT(d.pi_condition_defect, 1e-8) << s;
  }
}

TEST(RandomPulses, PiecewiseTotalRotationIsSegmentProduct) {
  const std::vector<Segment> segs = {{0.0, 0.3, Vec3(1.0, 0.0, 0.0)}, {0.3, 1.0, Vec3(0.0, 0.0, 2.0)}};
  const PulseShape p = PulseShape::piecewise_constant(1.0, 0.5, 0.0, segs);
  const Matrix2c expect = axis_angle_exponential(Vec3::UnitZ(), 2.0 * 2.0 * 0.7) *
                          axis_angle_exponential(Vec3::UnitX(), 2.0 * 1.0 * 0.3);
  EXPECT_LT((piecewise_total_rotation(p).matrix() - expect).norm(), 1e-14);
  EXPECT_THROW(piecewise_total_rotation(PulseShape()), std::logic_error);
}

}  // namespace
}  // namespace shortpulse
