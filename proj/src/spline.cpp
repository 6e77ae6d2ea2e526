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

#include "shortpulse/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace shortpulse {

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) {
    throw std::invalid_argument("CubicSpline: need >= 4 knots with matching values");
  }
  std::vector<double> dx(n - 1), m(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    dx[i] = x_[i + 1] - x_[i];
    if (!(dx[i] > 0.0)) throw std::invalid_argument("CubicSpline: knots must increase strictly");
    m[i] = (y_[i + 1] - y_[i]) / dx[i];
  }

  // Tridiagonal system for the knot slopes; not-a-knot rows folded in.
  std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0), rhs(n);
  {
    const double d = x_[2] - x_[0];
    diag[0] = dx[1];
    sup[0] = d;
    rhs[0] = ((dx[0] + 2.0 * d) * dx[1] * m[0] + dx[0] * dx[0] * m[1]) / d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sub[i] = dx[i];
    diag[i] = 2.0 * (dx[i - 1] + dx[i]);
    sup[i] = dx[i - 1];
    rhs[i] = 3.0 * (dx[i] * m[i - 1] + dx[i - 1] * m[i]);
  }
  {
    const double d = x_[n - 1] - x_[n - 3];
    sub[n - 1] = d;
    diag[n - 1] = dx[n - 3];
    rhs[n - 1] = (dx[n - 2] * dx[n - 2] * m[n - 3] + (2.0 * d + dx[n - 2]) * dx[n - 3] * m[n - 2]) / d;
  }

  // Thomas algorithm.
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  slope_.assign(n, 0.0);
  slope_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    slope_[i] = (rhs[i] - sup[i] * slope_[i + 1]) / diag[i];
  }
}

double CubicSpline::evaluate(double t, int order) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double h = x_[i + 1] - x_[i];
  const double s = t - x_[i];
  const double m = (y_[i + 1] - y_[i]) / h;
  const double c1 = slope_[i];
  const double c2 = (3.0 * m - 2.0 * slope_[i] - slope_[i + 1]) / h;
  const double c3 = (slope_[i] + slope_[i + 1] - 2.0 * m) / (h * h);
  if (order == 0) return y_[i] + s * (c1 + s * (c2 + s * c3));
  return c1 + s * (2.0 * c2 + 3.0 * s * c3);
}

}  // namespace shortpulse
