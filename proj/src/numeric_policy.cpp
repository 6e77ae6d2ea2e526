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

#include "shortpulse/numeric_policy.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace shortpulse {

namespace {

struct Field {
  const char* name;
  double NumericPolicy::*member;
};

constexpr Field kFields[] = {
    {"hermitian_tol", &NumericPolicy::hermitian_tol},
    {"unitary_tol", &NumericPolicy::unitary_tol},
    {"unit_norm_tol", &NumericPolicy::unit_norm_tol},
    {"branch_cut_margin", &NumericPolicy::branch_cut_margin},
    {"quadrature_rel", &NumericPolicy::quadrature_rel},
    {"quadrature_abs", &NumericPolicy::quadrature_abs},
    {"r2b_validity", &NumericPolicy::r2b_validity},
    {"pi_condition_tol", &NumericPolicy::pi_condition_tol},
    {"nogo_tol", &NumericPolicy::nogo_tol},
    {"converged_objective", &NumericPolicy::converged_objective},
    {"jacobian_tol", &NumericPolicy::jacobian_tol},
    {"residual_threshold", &NumericPolicy::residual_threshold},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, std::string_view key) {
  std::string buf(text);
  char* end = nullptr;
  double value = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) {
    throw std::invalid_argument("numeric policy: bad value for '" + std::string(key) +
                                "': '" + buf + "'");
  }
  return value;
}

}  // namespace

std::vector<std::pair<std::string, double>> NumericPolicy::entries() const {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& f : kFields) out.emplace_back(f.name, this->*(f.member));
  out.emplace_back("reprojection_interval", static_cast<double>(reprojection_interval));
  return out;
}

std::string NumericPolicy::serialize() const {
  std::string out;
  char buf[64];
  for (const auto& [name, value] : entries()) {
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    if (!out.empty()) out += ',';
    out += name;
    out += '=';
    out += buf;
  }
  return out;
}

void NumericPolicy::apply_overrides(std::string_view text) {
  while (!text.empty()) {
    auto cut = text.find_first_of(",;");
    std::string_view item = trim(text.substr(0, cut));
    text = cut == std::string_view::npos ? std::string_view{} : text.substr(cut + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("numeric policy: expected key=value, got '" +
                                  std::string(item) + "'");
    }
    std::string_view key = trim(item.substr(0, eq));
    double value = parse_double(trim(item.substr(eq + 1)), key);
    if (key == "reprojection_interval") {
      if (value < 1) throw std::invalid_argument("numeric policy: reprojection_interval < 1");
      reprojection_interval = static_cast<int>(value);
      continue;
    }
    bool found = false;
    for (const auto& f : kFields) {
      if (key == f.name) {
        if (!(value >= 0)) {
          throw std::invalid_argument("numeric policy: '" + std::string(key) +
                                      "' must be nonnegative");
        }
        this->*(f.member) = value;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("numeric policy: unknown key '" + std::string(key) + "'");
    }
  }
}

const NumericPolicy& numeric_policy() {
  static const NumericPolicy policy = [] {
    NumericPolicy p;
    if (const char* env = std::getenv(kPolicyEnvVar)) p.apply_overrides(env);
    return p;
  }();
  return policy;
}

}  // namespace shortpulse
