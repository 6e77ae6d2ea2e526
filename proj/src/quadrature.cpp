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

#include "shortpulse/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace shortpulse {

namespace {

template <typename T>
T zero_like() {
  if constexpr (std::is_same_v<T, double>) {
    return 0.0;
  } else {
    return T::Zero();
  }
}

template <typename T>
T simpson_impl(std::span<const double> x, std::span<const T> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("simpson: size mismatch");
  if (n < 2) return zero_like<T>();
  if (n == 2) return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);

  T total = zero_like<T>();
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    total += (hs / 6.0) * ((2.0 - h1 / h0) * y[i] + (hs * hs / (h0 * h1)) * y[i + 1] +
                           (2.0 - h0 / h1) * y[i + 2]);
  }
  if (i + 1 < n) {
    // One interval left: integrate the parabola through the last three samples.
    const double h0 = x[n - 2] - x[n - 3];
    const double h1 = x[n - 1] - x[n - 2];
    const double alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
    const double beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
    const double eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
    total += alpha * y[n - 1] + beta * y[n - 2] - eta * y[n - 3];
  }
  return total;
}

template <typename T>
std::vector<T> cumulative_impl(std::span<const double> x, std::span<const T> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("cumulative_integral: size mismatch");
  std::vector<T> out(n, zero_like<T>());
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      out[j + 1] = out[j] + 0.5 * (x[j + 1] - x[j]) * (y[j] + y[j + 1]);
    }
    return out;
  }
  const double g = 0.5 / std::sqrt(3.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t s = std::min<std::size_t>(j == 0 ? 0 : j - 1, n - 4);
    const double h = x[j + 1] - x[j];
    const double mid = 0.5 * (x[j] + x[j + 1]);
    T acc = zero_like<T>();
    for (double t : {mid - g * h, mid + g * h}) {
      for (std::size_t a = s; a < s + 4; ++a) {
        double w = 1.0;
        for (std::size_t b = s; b < s + 4; ++b) {
          if (b != a) w *= (t - x[b]) / (x[a] - x[b]);
        }
        acc += w * y[a];
      }
    }
    out[j + 1] = out[j] + (0.5 * h) * acc;
  }
  return out;
}

}  // namespace

std::vector<double> nodal_derivative(std::span<const double> x, std::span<const double> y) {
  constexpr std::size_t kStencil = 7;
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("nodal_derivative: size mismatch");
  if (n < kStencil) throw std::invalid_argument("nodal_derivative: need >= 7 nodes");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("nodal_derivative: nodes must increase");
  }
  std::vector<double> out(n);
  std::array<std::array<double, 2>, kStencil> c{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = std::min(i >= kStencil / 2 ? i - kStencil / 2 : 0, n - kStencil);
    const double* s = x.data() + lo;
    const double z = x[i];
    // Fornberg's recursion for interpolation and first-derivative weights.
    for (auto& row : c) row = {0.0, 0.0};
    double c1 = 1.0, c4 = s[0] - z;
    c[0][0] = 1.0;
    for (std::size_t a = 1; a < kStencil; ++a) {
      double c2 = 1.0;
      const double c5 = c4;
      c4 = s[a] - z;
      for (std::size_t b = 0; b < a; ++b) {
        const double c3 = s[a] - s[b];
        c2 *= c3;
        if (b == a - 1) {
          c[a][1] = c1 * (c[a - 1][0] - c5 * c[a - 1][1]) / c2;
          c[a][0] = -c1 * c5 * c[a - 1][0] / c2;
        }
        c[b][1] = (c4 * c[b][1] - c[b][0]) / c3;
        c[b][0] = c4 * c[b][0] / c3;
      }
      c1 = c2;
    }
    double d = 0.0;
    for (std::size_t a = 0; a < kStencil; ++a) d += c[a][1] * y[lo + a];
    out[i] = d;
  }
  return out;
}

double simpson(std::span<const double> x, std::span<const double> y) {
  return simpson_impl<double>(x, y);
}

Vec3 simpson(std::span<const double> x, std::span<const Vec3> y) {
  return simpson_impl<Vec3>(x, y);
}

std::vector<double> cumulative_integral(std::span<const double> x, std::span<const double> y) {
  return cumulative_impl<double>(x, y);
}

std::vector<Vec3> cumulative_integral(std::span<const double> x, std::span<const Vec3> y) {
  return cumulative_impl<Vec3>(x, y);
}

}  // namespace shortpulse
