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

#include <cstdint>
#include <random>

#include "shortpulse/pulse.hpp"

namespace shortpulse {

using Rng = std::mt19937_64;

/// Independent generator for stream `index` of a seeded family.
Rng make_rng(std::uint64_t seed, std::uint64_t index);

/// Fourier pulse of order `order` with uniform random coefficients, rescaled so
/// that int |v| dt is uniform in [min_area, max_area].
PulseShape random_fourier_pulse(Rng& rng, double tau_p, double tau_s, int order,
                                double min_area, double max_area);

/// Random Fourier profile of order <= max_order sampled into `pieces`
/// constant segments on [0, body * tau_p], closed by one constant segment
/// whose rotation sends the Heisenberg-picture z axis to -z, so that
/// n(0) = -n(tau_p). tau_s is drawn uniformly from [0, tau_p].
PulseShape random_pi_conditioned_pulse(Rng& rng, double tau_p, int max_order,
                                       int pieces = 32, double body = 0.8);

/// Total rotation exp(-i p(tau_p)) exp(i p(0)) = U(tau_p, 0) of a piecewise
/// constant pulse, as an exact product of segment exponentials.
SU2 piecewise_total_rotation(const PulseShape& shape);

}  // namespace shortpulse
