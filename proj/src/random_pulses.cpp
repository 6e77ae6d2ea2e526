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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shortpulse/quadrature.hpp"

namespace shortpulse {

namespace {

constexpr double kPi = std::numbers::pi;

FourierSeries random_series(Rng& rng, int order) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  FourierSeries f;
  f.order = order;
  for (int i = 0; i < 3; ++i) {
    f.cos[i].resize(static_cast<std::size_t>(order) + 1);
    f.sin[i].resize(static_cast<std::size_t>(order));
    for (double& c : f.cos[i]) c = coeff(rng);
    for (double& c : f.sin[i]) c = coeff(rng);
  }
  return f;
}

double amplitude_area(const PulseShape& shape, int nodes) {
  std::vector<double> t(static_cast<std::size_t>(nodes)), y(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = shape.tau_p() * static_cast<double>(i) / static_cast<double>(nodes - 1);
    y[i] = shape.amplitude(t[i]).norm();
  }
  return simpson(t, y);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x5eedu};
  return Rng(seq);
}

PulseShape random_fourier_pulse(Rng& rng, double tau_p, double tau_s, int order,
                                double min_area, double max_area) {
  if (order < 0) throw std::invalid_argument("random_fourier_pulse: negative order");
  if (!(min_area > 0.0 && max_area >= min_area)) {
    throw std::invalid_argument("random_fourier_pulse: bad area range");
  }
  FourierSeries f = random_series(rng, order);
  const PulseShape raw = PulseShape::fourier(tau_p, tau_s, 0.0, f);
  const double area = amplitude_area(raw, 257);
  const double target = std::uniform_real_distribution<double>(min_area, max_area)(rng);
  const double scale = area > 0.0 ? target / area : 0.0;
  for (int i = 0; i < 3; ++i) {
    for (double& c : f.cos[i]) c *= scale;
    for (double& c : f.sin[i]) c *= scale;
  }
  return PulseShape::fourier(tau_p, tau_s, 0.0, std::move(f));
}

SU2 piecewise_total_rotation(const PulseShape& shape) {
  SU2 u = SU2::identity();
  for (const Segment& s : shape.segments()) {
    const double len = s.amplitude.norm();
    if (len == 0.0) continue;
    u = SU2::from_axis_angle(s.amplitude / len, 2.0 * (s.end - s.begin) * len) * u;
  }
  return u;
}

PulseShape random_pi_conditioned_pulse(Rng& rng, double tau_p, int max_order, int pieces,
                                       double body) {
  if (max_order < 1 || pieces < 1 || !(body > 0.0 && body < 1.0)) {
    throw std::invalid_argument("random_pi_conditioned_pulse: bad parameters");
  }
  const int order = std::uniform_int_distribution<int>(1, max_order)(rng);
  const double body_end = body * tau_p;
  const PulseShape profile =
      random_fourier_pulse(rng, body_end, 0.0, order, 0.5 * kPi, 3.0 * kPi);
  const double tau_s = std::uniform_real_distribution<double>(0.0, tau_p)(rng);

  std::vector<Segment> segs;
  for (int k = 0; k < pieces; ++k) {
    const double a = body_end * k / pieces;
    const double b = body_end * (k + 1) / pieces;
    segs.push_back({a, b, profile.amplitude(0.5 * (a + b))});
  }
  segs.back().end = body_end;

  // U1 sigma_z U1^dag = m.sigma; the closing rotation R2 must send m to -z.
  const PulseShape head = PulseShape::piecewise_constant(body_end, 0.0, 0.0, segs);
  const Vec3 m = pauli_conjugate(piecewise_total_rotation(head).matrix()).matrix().col(2);
  const Vec3 target = -Vec3::UnitZ();
  Vec3 axis = m.cross(target);
  const double s = axis.norm();
  double angle = std::atan2(s, m.dot(target));
  if (s < 1e-12) {
    axis = Vec3::UnitX();
    if (m.dot(target) > 0.0) angle = 0.0;
  } else {
    axis /= s;
  }
  const double duration = tau_p - body_end;
  segs.push_back({body_end, tau_p, (angle / (2.0 * duration)) * axis});
  return PulseShape::piecewise_constant(tau_p, tau_s, kPi, std::move(segs));
}

}  // namespace shortpulse
