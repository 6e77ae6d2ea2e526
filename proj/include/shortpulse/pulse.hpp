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

// Control pulses H0(t) = sigma . v(t) on [0, tau_p] and their rotation-frame
// description exp(-i p(t)), p(t) = (psi(t)/2) a(t).sigma, anchored at the
// splitting instant: p(tau_s) = 0.

#pragma once

#include <array>
#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "shortpulse/spline.hpp"
#include "shortpulse/su2.hpp"

namespace shortpulse {

enum class Representation { fourier, piecewise_constant, axis_angle_samples };

std::string_view to_string(Representation r);
/// Throws std::invalid_argument for unknown names.
Representation representation_from_string(std::string_view name);

/// v_i(t) = cos[i][0] + sum_k cos[i][k] cos(2 pi k t / tau_p) + sin[i][k-1] sin(2 pi k t / tau_p)
struct FourierSeries {
  int order = 0;
  std::array<std::vector<double>, 3> cos;  // order + 1 entries each
  std::array<std::vector<double>, 3> sin;  // order entries each
};

struct Segment {
  double begin = 0.0;
  double end = 0.0;
  Vec3 amplitude = Vec3::Zero();
};

struct AxisAngleSample {
  double t = 0.0;
  Vec3 axis = Vec3::UnitZ();
  double psi = 0.0;
};

class PulseShape {
 public:
  /// No pulse: v = 0 on [0, 1], tau_s = 1/2, theta = 0.
  PulseShape();

  static PulseShape fourier(double tau_p, double tau_s, double theta, FourierSeries series);
  static PulseShape piecewise_constant(double tau_p, double tau_s, double theta,
                                       std::vector<Segment> segments);
  static PulseShape axis_angle_samples(double tau_p, double tau_s, double theta,
                                       std::vector<AxisAngleSample> samples);

  double tau_p() const { return tau_p_; }
  double tau_s() const { return tau_s_; }
  double theta() const { return theta_; }
  Representation representation() const;

  const FourierSeries& fourier_series() const;
  const std::vector<Segment>& segments() const;
  const std::vector<AxisAngleSample>& samples() const;

  /// v(t); for piecewise pulses the segment is chosen by `selector`, which
  /// lets integrators ask for one-sided limits at segment boundaries.
  Vec3 amplitude(double t, double selector) const;
  Vec3 amplitude(double t) const { return amplitude(t, t); }

  /// Interior instants where v(t) may be discontinuous.
  std::vector<double> breakpoints() const;

  PulseShape with_tau_s(double tau_s) const;
  /// Same dimensionless profile stretched to a new duration (v scales as 1/tau_p).
  PulseShape rescaled(double tau_p) const;

 private:
  struct SampledFrame {
    std::vector<AxisAngleSample> samples;
    std::array<CubicSpline, 3> axis;
    CubicSpline psi;
  };
  using Params = std::variant<FourierSeries, std::vector<Segment>,
                              std::shared_ptr<const SampledFrame>>;

  PulseShape(double tau_p, double tau_s, double theta, Params params);
  static std::shared_ptr<const SampledFrame> make_frame(std::vector<AxisAngleSample> samples);

  double tau_p_ = 1.0;
  double tau_s_ = 0.5;
  double theta_ = 0.0;
  Params params_;
};

/// v(t) for 0 <= t <= tau_p; throws std::out_of_range otherwise.
Vec3 eval_amplitude(const PulseShape& shape, double t);

/// d^m v / dt^m for Fourier pulses (exact). Throws std::invalid_argument for
/// other representations.
Vec3 amplitude_derivative(const PulseShape& shape, double t, int order);

/// Integration nodes: 0 = t_0 < ... < t_M = tau_p containing tau_s and every
/// breakpoint; each piece between fixed points is split uniformly.
struct TimeGrid {
  std::vector<double> t;
  std::size_t split = 0;  // t[split] == tau_s
};
TimeGrid make_time_grid(const PulseShape& shape, int steps);

class AxisAngleTrajectory {
 public:
  AxisAngleTrajectory(std::vector<double> t, std::vector<Vec3> axis, std::vector<double> psi,
                      double tau_s);

  std::size_t size() const { return t_.size(); }
  const std::vector<double>& time() const { return t_; }
  const std::vector<Vec3>& axis() const { return axis_; }
  const std::vector<double>& psi() const { return psi_; }
  double tau_s() const { return tau_s_; }
  double tau_p() const { return t_.back(); }

  /// exp(-i p(t_i))
  SU2 rotation(std::size_t i) const { return SU2::from_axis_angle(axis_[i], psi_[i]); }
  /// exp(-i p(tau_p)) exp(i p(0)), the net rotation of the pulse.
  SU2 total_rotation() const { return rotation(size() - 1) * rotation(0).adjoint(); }

 private:
  std::vector<double> t_;
  std::vector<Vec3> axis_;
  std::vector<double> psi_;
  double tau_s_;
};

class NTrajectory {
 public:
  NTrajectory(std::vector<double> t, std::vector<Vec3> nhat);

  std::size_t size() const { return t_.size(); }
  const std::vector<double>& time() const { return t_; }
  const std::vector<Vec3>& nhat() const { return n_; }
  double tau_p() const { return t_.back(); }

 private:
  std::vector<double> t_;
  std::vector<Vec3> n_;
};

/// RK4 solution of i d/dt U = H0(t) U from U(tau_s) = I, both directions,
/// on the given grid. Returns U(t_i) = exp(-i p(t_i)).
std::vector<SU2> pulse_rotations(const PulseShape& shape, const TimeGrid& grid);

/// Integrates the pulse Schroedinger equation with `steps` (>= 64) RK4 steps and
/// extracts a continuous (axis, psi) frame with psi(tau_s) = 0.
AxisAngleTrajectory integrate_axis_angle(const PulseShape& shape, int steps);

/// Continuous (axis, psi) extraction from sampled unitaries; grid[split] is tau_s.
AxisAngleTrajectory frame_from_rotations(const TimeGrid& grid, const std::vector<SU2>& u,
                                         const Vec3& initial_axis);

/// The samples of an axis_angle_samples pulse taken as a trajectory verbatim.
AxisAngleTrajectory trajectory_from_samples(const PulseShape& shape);

/// 2v = psi' a + a' sin psi - (1 - cos psi)(a' x a), evaluated in the
/// equivalent form v = w q' - w' q + q x q' with w = cos(psi/2) and
/// q = sin(psi/2) a, which stays regular where psi crosses 2 pi k. Derivatives
/// come from seven-node stencils. Needs >= 16 nodes.
std::vector<Vec3> amplitude_from_axis_angle(const AxisAngleTrajectory& traj);

/// n(t_i) = D_a(-psi) z
NTrajectory n_trajectory(const AxisAngleTrajectory& traj);

}  // namespace shortpulse
