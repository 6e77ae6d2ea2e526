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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "shortpulse/numeric_policy.hpp"
#include "shortpulse/quadrature.hpp"

namespace shortpulse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_timing(double tau_p, double tau_s, double theta) {
  if (!(tau_p > 0.0) || !std::isfinite(tau_p)) {
    throw std::invalid_argument("pulse: tau_p must be positive and finite");
  }
  if (!(tau_s >= 0.0 && tau_s <= tau_p)) {
    throw std::invalid_argument("pulse: tau_s must lie in [0, tau_p]");
  }
  if (!std::isfinite(theta)) throw std::invalid_argument("pulse: theta must be finite");
}

bool all_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

std::string_view to_string(Representation r) {
  switch (r) {
    case Representation::fourier:
      return "fourier";
    case Representation::piecewise_constant:
      return "piecewise_constant";
    case Representation::axis_angle_samples:
      return "axis_angle_samples";
  }
  return "unknown";
}

Representation representation_from_string(std::string_view name) {
  if (name == "fourier") return Representation::fourier;
  if (name == "piecewise_constant") return Representation::piecewise_constant;
  if (name == "axis_angle_samples") return Representation::axis_angle_samples;
  throw std::invalid_argument("unknown pulse representation '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// PulseShape
// ---------------------------------------------------------------------------

PulseShape::PulseShape(double tau_p, double tau_s, double theta, Params params)
    : tau_p_(tau_p), tau_s_(tau_s), theta_(theta), params_(std::move(params)) {}

PulseShape::PulseShape() : PulseShape(fourier(1.0, 0.5, 0.0, FourierSeries{})) {}

PulseShape PulseShape::fourier(double tau_p, double tau_s, double theta, FourierSeries series) {
  check_timing(tau_p, tau_s, theta);
  if (series.order < 0) throw std::invalid_argument("fourier: order must be >= 0");
  const auto k = static_cast<std::size_t>(series.order);
  for (int i = 0; i < 3; ++i) {
    if (series.cos[i].empty()) series.cos[i].assign(k + 1, 0.0);
    if (series.sin[i].empty()) series.sin[i].assign(k, 0.0);
    if (series.cos[i].size() != k + 1 || series.sin[i].size() != k) {
      throw std::invalid_argument("fourier: component " + std::to_string(i) +
                                  " needs order+1 cosine and order sine coefficients");
    }
    for (double c : series.cos[i]) {
      if (!std::isfinite(c)) throw std::invalid_argument("fourier: non-finite coefficient");
    }
    for (double c : series.sin[i]) {
      if (!std::isfinite(c)) throw std::invalid_argument("fourier: non-finite coefficient");
    }
  }
  return PulseShape(tau_p, tau_s, theta, std::move(series));
}

PulseShape PulseShape::piecewise_constant(double tau_p, double tau_s, double theta,
                                          std::vector<Segment> segments) {
  check_timing(tau_p, tau_s, theta);
  if (segments.empty()) throw std::invalid_argument("piecewise: no segments");
  const double tol = 1e-12 * tau_p;
  if (std::abs(segments.front().begin) > tol || std::abs(segments.back().end - tau_p) > tol) {
    throw std::invalid_argument("piecewise: segments must cover [0, tau_p] exactly");
  }
  segments.front().begin = 0.0;
  segments.back().end = tau_p;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!(segments[i].end > segments[i].begin)) {
      throw std::invalid_argument("piecewise: segment boundaries must increase strictly");
    }
    if (i + 1 < segments.size() && std::abs(segments[i].end - segments[i + 1].begin) > tol) {
      throw std::invalid_argument("piecewise: segments must be contiguous");
    }
    if (!all_finite(segments[i].amplitude)) {
      throw std::invalid_argument("piecewise: non-finite amplitude");
    }
  }
  return PulseShape(tau_p, tau_s, theta, std::move(segments));
}

std::shared_ptr<const PulseShape::SampledFrame> PulseShape::make_frame(
    std::vector<AxisAngleSample> samples) {
  auto frame = std::make_shared<SampledFrame>();
  const std::size_t n = samples.size();
  std::vector<double> t(n), psi(n);
  std::array<std::vector<double>, 3> axis;
  for (auto& a : axis) a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = samples[i].t;
    psi[i] = samples[i].psi;
    for (int c = 0; c < 3; ++c) axis[c][i] = samples[i].axis(c);
  }
  for (int c = 0; c < 3; ++c) frame->axis[c] = CubicSpline(t, axis[c]);
  frame->psi = CubicSpline(t, psi);
  frame->samples = std::move(samples);
  return frame;
}

PulseShape PulseShape::axis_angle_samples(double tau_p, double tau_s, double theta,
                                          std::vector<AxisAngleSample> samples) {
  check_timing(tau_p, tau_s, theta);
  if (samples.size() < 4) throw std::invalid_argument("axis_angle_samples: need >= 4 samples");
  const double tol = 1e-12 * tau_p;
  if (std::abs(samples.front().t) > tol || std::abs(samples.back().t - tau_p) > tol) {
    throw std::invalid_argument("axis_angle_samples: samples must span [0, tau_p]");
  }
  samples.front().t = 0.0;
  samples.back().t = tau_p;
  const double unit_tol = numeric_policy().unit_norm_tol;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw std::invalid_argument("axis_angle_samples: times must increase strictly");
    }
    if (!is_unit_vector(samples[i].axis, unit_tol)) {
      throw std::invalid_argument("axis_angle_samples: axis sample " + std::to_string(i) +
                                  " is not a unit vector");
    }
    if (!std::isfinite(samples[i].psi)) {
      throw std::invalid_argument("axis_angle_samples: non-finite angle");
    }
  }
  return PulseShape(tau_p, tau_s, theta, make_frame(std::move(samples)));
}

Representation PulseShape::representation() const {
  return static_cast<Representation>(params_.index());
}

const FourierSeries& PulseShape::fourier_series() const {
  if (const auto* f = std::get_if<FourierSeries>(&params_)) return *f;
  throw std::logic_error("pulse is not a Fourier pulse");
}

const std::vector<Segment>& PulseShape::segments() const {
  if (const auto* s = std::get_if<std::vector<Segment>>(&params_)) return *s;
  throw std::logic_error("pulse is not piecewise constant");
}

const std::vector<AxisAngleSample>& PulseShape::samples() const {
  if (const auto* s = std::get_if<std::shared_ptr<const SampledFrame>>(&params_)) {
    return (*s)->samples;
  }
  throw std::logic_error("pulse is not given by axis-angle samples");
}

Vec3 PulseShape::amplitude(double t, double selector) const {
  if (const auto* f = std::get_if<FourierSeries>(&params_)) {
    Vec3 v;
    const double phase = kTwoPi * t / tau_p_;
    for (int i = 0; i < 3; ++i) {
      double acc = f->cos[i][0];
      for (int k = 1; k <= f->order; ++k) {
        acc += f->cos[i][k] * std::cos(k * phase) + f->sin[i][k - 1] * std::sin(k * phase);
      }
      v(i) = acc;
    }
    return v;
  }
  if (const auto* segs = std::get_if<std::vector<Segment>>(&params_)) {
    auto it = std::upper_bound(segs->begin(), segs->end(), selector,
                               [](double s, const Segment& seg) { return s < seg.end; });
    if (it == segs->end()) --it;
    return it->amplitude;
  }
  const auto& frame = *std::get<std::shared_ptr<const SampledFrame>>(params_);
  Vec3 raw(frame.axis[0](t), frame.axis[1](t), frame.axis[2](t));
  Vec3 raw_d(frame.axis[0].derivative(t), frame.axis[1].derivative(t),
             frame.axis[2].derivative(t));
  const double len = raw.norm();
  const Vec3 a = raw / len;
  const Vec3 da = (raw_d - a * a.dot(raw_d)) / len;
  const double psi = frame.psi(t);
  const double dpsi = frame.psi.derivative(t);
  return 0.5 * (dpsi * a + std::sin(psi) * da - (1.0 - std::cos(psi)) * da.cross(a));
}

std::vector<double> PulseShape::breakpoints() const {
  std::vector<double> out;
  if (const auto* segs = std::get_if<std::vector<Segment>>(&params_)) {
    for (std::size_t i = 0; i + 1 < segs->size(); ++i) out.push_back((*segs)[i].end);
  }
  return out;
}

PulseShape PulseShape::with_tau_s(double tau_s) const {
  check_timing(tau_p_, tau_s, theta_);
  PulseShape copy = *this;
  copy.tau_s_ = tau_s;
  return copy;
}

PulseShape PulseShape::rescaled(double tau_p) const {
  if (!(tau_p > 0.0)) throw std::invalid_argument("rescaled: tau_p must be positive");
  const double stretch = tau_p / tau_p_;
  const double tau_s = std::min(tau_s_ * stretch, tau_p);
  if (const auto* f = std::get_if<FourierSeries>(&params_)) {
    FourierSeries g = *f;
    for (int i = 0; i < 3; ++i) {
      for (double& c : g.cos[i]) c /= stretch;
      for (double& c : g.sin[i]) c /= stretch;
    }
    return fourier(tau_p, tau_s, theta_, std::move(g));
  }
  if (const auto* segs = std::get_if<std::vector<Segment>>(&params_)) {
    std::vector<Segment> out = *segs;
    for (auto& s : out) {
      s.begin *= stretch;
      s.end *= stretch;
      s.amplitude /= stretch;
    }
    return piecewise_constant(tau_p, tau_s, theta_, std::move(out));
  }
  std::vector<AxisAngleSample> out = samples();
  for (auto& s : out) s.t *= stretch;
  return axis_angle_samples(tau_p, tau_s, theta_, std::move(out));
}

Vec3 eval_amplitude(const PulseShape& shape, double t) {
  if (!(t >= 0.0 && t <= shape.tau_p())) {
    throw std::out_of_range("eval_amplitude: t = " + std::to_string(t) + " outside [0, tau_p]");
  }
  return shape.amplitude(t);
}

Vec3 amplitude_derivative(const PulseShape& shape, double t, int order) {
  if (shape.representation() != Representation::fourier) {
    throw std::invalid_argument("amplitude_derivative: only defined for Fourier pulses");
  }
  if (order < 0) throw std::invalid_argument("amplitude_derivative: negative order");
  if (order == 0) return eval_amplitude(shape, t);
  const auto& f = shape.fourier_series();
  const double w = kTwoPi / shape.tau_p();
  const double shift = 0.5 * std::numbers::pi * order;
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int k = 1; k <= f.order; ++k) {
      const double scale = std::pow(k * w, order);
      v(i) += scale * (f.cos[i][k] * std::cos(k * w * t + shift) +
                       f.sin[i][k - 1] * std::sin(k * w * t + shift));
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Grids and trajectories
// ---------------------------------------------------------------------------

TimeGrid make_time_grid(const PulseShape& shape, int steps) {
  const double tau_p = shape.tau_p();
  std::vector<double> fixed = shape.breakpoints();
  fixed.push_back(0.0);
  fixed.push_back(shape.tau_s());
  fixed.push_back(tau_p);
  std::sort(fixed.begin(), fixed.end());
  const double merge = 1e-13 * tau_p;
  std::vector<double> pts;
  for (double p : fixed) {
    if (pts.empty() || p - pts.back() > merge) pts.push_back(p);
  }
  pts.back() = tau_p;

  TimeGrid grid;
  grid.t.push_back(0.0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = pts[i + 1] - pts[i];
    const int n = std::max(1, static_cast<int>(std::lround(steps * len / tau_p)));
    for (int j = 1; j < n; ++j) grid.t.push_back(pts[i] + len * j / n);
    grid.t.push_back(pts[i + 1]);
  }
  auto it = std::min_element(grid.t.begin(), grid.t.end(), [&](double a, double b) {
    return std::abs(a - shape.tau_s()) < std::abs(b - shape.tau_s());
  });
  grid.split = static_cast<std::size_t>(it - grid.t.begin());
  grid.t[grid.split] = shape.tau_s();
  return grid;
}

AxisAngleTrajectory::AxisAngleTrajectory(std::vector<double> t, std::vector<Vec3> axis,
                                         std::vector<double> psi, double tau_s)
    : t_(std::move(t)), axis_(std::move(axis)), psi_(std::move(psi)), tau_s_(tau_s) {
  if (t_.size() < 2 || axis_.size() != t_.size() || psi_.size() != t_.size()) {
    throw std::invalid_argument("AxisAngleTrajectory: inconsistent sizes");
  }
  const double unit_tol = numeric_policy().unit_norm_tol;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (i > 0 && !(t_[i] > t_[i - 1])) {
      throw std::invalid_argument("AxisAngleTrajectory: grid must increase strictly");
    }
    if (!is_unit_vector(axis_[i], unit_tol)) {
      throw std::invalid_argument("AxisAngleTrajectory: axis is not unit at node " +
                                  std::to_string(i));
    }
    if (!std::isfinite(psi_[i])) throw std::invalid_argument("AxisAngleTrajectory: bad angle");
  }
}

NTrajectory::NTrajectory(std::vector<double> t, std::vector<Vec3> nhat)
    : t_(std::move(t)), n_(std::move(nhat)) {
  if (t_.size() < 2 || n_.size() != t_.size()) {
    throw std::invalid_argument("NTrajectory: inconsistent sizes");
  }
  const double unit_tol = numeric_policy().unit_norm_tol;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (i > 0 && !(t_[i] > t_[i - 1])) {
      throw std::invalid_argument("NTrajectory: grid must increase strictly");
    }
    if (!is_unit_vector(n_[i], unit_tol)) {
      throw std::invalid_argument("NTrajectory: n is not unit at node " + std::to_string(i));
    }
  }
}

namespace {

// d/dt (w, q) for U = w - i q.sigma under i dU/dt = (v.sigma) U.
inline SU2 generator(const Vec3& v, const SU2& u) {
  return {-v.dot(u.q), u.w * v + v.cross(u.q)};
}

inline SU2 axpy(const SU2& u, double h, const SU2& k) { return {u.w + h * k.w, u.q + h * k.q}; }

SU2 rk4_step(const PulseShape& shape, const SU2& u, double t0, double t1) {
  const double h = t1 - t0;
  const double sel = 0.5 * (t0 + t1);
  const Vec3 v0 = shape.amplitude(t0, sel);
  const Vec3 vm = shape.amplitude(sel, sel);
  const Vec3 v1 = shape.amplitude(t1, sel);
  if (!v0.allFinite() || !vm.allFinite() || !v1.allFinite()) {
    throw std::invalid_argument("integrate_axis_angle: non-finite amplitude");
  }
  const SU2 k1 = generator(v0, u);
  const SU2 k2 = generator(vm, axpy(u, 0.5 * h, k1));
  const SU2 k3 = generator(vm, axpy(u, 0.5 * h, k2));
  const SU2 k4 = generator(v1, axpy(u, h, k3));
  return {u.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w),
          u.q + h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q)};
}

}  // namespace

std::vector<SU2> pulse_rotations(const PulseShape& shape, const TimeGrid& grid) {
  const auto& t = grid.t;
  const int reproject = numeric_policy().reprojection_interval;
  std::vector<SU2> u(t.size());
  u[grid.split] = SU2::identity();
  int count = 0;
  for (std::size_t i = grid.split; i + 1 < t.size(); ++i) {
    u[i + 1] = rk4_step(shape, u[i], t[i], t[i + 1]);
    if (++count % reproject == 0) u[i + 1] = u[i + 1].normalized();
  }
  count = 0;
  for (std::size_t i = grid.split; i > 0; --i) {
    u[i - 1] = rk4_step(shape, u[i], t[i], t[i - 1]);
    if (++count % reproject == 0) u[i - 1] = u[i - 1].normalized();
  }
  // Unit quaternions are exactly the unitary ones: final polar projection.
  for (auto& x : u) x = x.normalized();
  return u;
}

AxisAngleTrajectory frame_from_rotations(const TimeGrid& grid, const std::vector<SU2>& u,
                                         const Vec3& initial_axis) {
  const std::size_t n = grid.t.size();
  std::vector<Vec3> axis(n);
  std::vector<double> psi(n);

  auto extract = [&](std::size_t i, const Vec3& prev_axis, double prev_psi) {
    const SU2& r = u[i];
    const double qn = r.q.norm();
    Vec3 a = prev_axis;
    double half = 0.0;
    if (qn > 1e-12) {
      a = r.q / qn;
      half = std::atan2(qn, r.w);
      if (a.dot(prev_axis) < 0.0) {
        a = -a;
        half = -half;
      }
    } else {
      // psi at a multiple of 2 pi: hold the previous axis.
      half = std::atan2(r.q.dot(prev_axis), r.w);
    }
    double p = 2.0 * half;
    const double turn = 4.0 * std::numbers::pi;
    p += turn * std::round((prev_psi - p) / turn);
    axis[i] = a;
    psi[i] = p;
  };

  axis[grid.split] = initial_axis;
  psi[grid.split] = 0.0;
  for (std::size_t i = grid.split + 1; i < n; ++i) extract(i, axis[i - 1], psi[i - 1]);
  for (std::size_t i = grid.split; i > 0; --i) extract(i - 1, axis[i], psi[i]);
  return AxisAngleTrajectory(grid.t, std::move(axis), std::move(psi), grid.t[grid.split]);
}

AxisAngleTrajectory integrate_axis_angle(const PulseShape& shape, int steps) {
  if (steps < 64) throw std::invalid_argument("integrate_axis_angle: steps must be >= 64");
  const TimeGrid grid = make_time_grid(shape, steps);
  const std::vector<SU2> u = pulse_rotations(shape, grid);

  // Axis at tau_s: direction of the generator leaving tau_s.
  Vec3 start = Vec3::UnitZ();
  const double ts = shape.tau_s();
  const double eps = 1e-9 * shape.tau_p();
  Vec3 v = shape.amplitude(ts, std::min(ts + eps, shape.tau_p()));
  if (v.norm() <= 1e-300) v = shape.amplitude(ts, std::max(ts - eps, 0.0));
  if (v.norm() > 1e-300) {
    start = v.normalized();
  } else {
    const std::size_t s = grid.split;
    if (s + 1 < u.size() && u[s + 1].q.norm() > 1e-300) {
      start = u[s + 1].q.normalized();
    } else if (s > 0 && u[s - 1].q.norm() > 1e-300) {
      start = -u[s - 1].q.normalized();
    }
  }
  return frame_from_rotations(grid, u, start);
}

AxisAngleTrajectory trajectory_from_samples(const PulseShape& shape) {
  const auto& s = shape.samples();
  std::vector<double> t(s.size()), psi(s.size());
  std::vector<Vec3> axis(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    t[i] = s[i].t;
    axis[i] = s[i].axis.normalized();
    psi[i] = s[i].psi;
  }
  return AxisAngleTrajectory(std::move(t), std::move(axis), std::move(psi), shape.tau_s());
}

std::vector<Vec3> amplitude_from_axis_angle(const AxisAngleTrajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 16) {
    throw std::invalid_argument("amplitude_from_axis_angle: need >= 16 nodes to differentiate");
  }
  const auto& t = traj.time();
  std::vector<double> w(n);
  std::array<std::vector<double>, 3> q;
  for (auto& c : q) c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double half = 0.5 * traj.psi()[i];
    w[i] = std::cos(half);
    for (int c = 0; c < 3; ++c) q[c][i] = std::sin(half) * traj.axis()[i](c);
  }
  const std::vector<double> dw = nodal_derivative(t, w);
  const std::array<std::vector<double>, 3> dq = {nodal_derivative(t, q[0]), nodal_derivative(t, q[1]),
                                                 nodal_derivative(t, q[2])};
  std::vector<Vec3> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 qi(q[0][i], q[1][i], q[2][i]);
    const Vec3 dqi(dq[0][i], dq[1][i], dq[2][i]);
    v[i] = w[i] * dqi - dw[i] * qi + qi.cross(dqi);
  }
  return v;
}

NTrajectory n_trajectory(const AxisAngleTrajectory& traj) {
  std::vector<Vec3> n(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    n[i] = rotation_matrix(traj.axis()[i], -traj.psi()[i]).apply(Vec3::UnitZ());
  }
  return NTrajectory(traj.time(), std::move(n));
}

}  // namespace shortpulse
