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

// Sampled-data quadrature on (possibly non-uniform) grids.

#pragma once

#include <span>
#include <vector>

#include "shortpulse/su2.hpp"

namespace shortpulse {

/// Composite Simpson rule for unequal spacing; an odd trailing interval is
/// closed with the three-point rule restricted to the last interval.
double simpson(std::span<const double> x, std::span<const double> y);
Vec3 simpson(std::span<const double> x, std::span<const Vec3> y);

/// Running integral F(x_i) = int_{x_0}^{x_i} y, exact for cubics: each
/// interval integrates the cubic through its four nearest samples.
std::vector<double> cumulative_integral(std::span<const double> x, std::span<const double> y);
std::vector<Vec3> cumulative_integral(std::span<const double> x, std::span<const Vec3> y);

/// dy/dx at every node from the interpolating polynomial through the seven
/// nearest nodes (exact for degree 6). Requires at least 7 strictly
/// increasing nodes.
std::vector<double> nodal_derivative(std::span<const double> x, std::span<const double> y);

}  // namespace shortpulse
