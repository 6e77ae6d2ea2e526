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

#pragma once

#include <span>
#include <vector>

namespace shortpulse {

/// Interpolating cubic spline with not-a-knot end conditions.
class CubicSpline {
 public:
  CubicSpline() = default;
  /// Requires at least 4 strictly increasing knots.
  CubicSpline(std::span<const double> x, std::span<const double> y);

  double operator()(double t) const { return evaluate(t, 0); }
  double derivative(double t) const { return evaluate(t, 1); }
  /// Slope at knot i (exact spline value, no interval search).
  double knot_slope(std::size_t i) const { return slope_[i]; }

  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  double evaluate(double t, int order) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace shortpulse
