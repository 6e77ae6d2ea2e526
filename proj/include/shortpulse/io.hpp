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

// Flat "key = value" text records (pulse, bath, problem and solution files),
// CSV output with 17 significant digits and the run manifest stamped into
// every output. The schemas are documented in docs/file-formats.md.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shortpulse/bath.hpp"
#include "shortpulse/corrections.hpp"
#include "shortpulse/optimizer.hpp"
#include "shortpulse/pulse.hpp"

namespace shortpulse {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Syntax or schema error; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, int column, const std::string& message);
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string source_;
  int line_;
  int column_;
};

struct RecordEntry {
  std::string key;
  std::string value;
  int line = 0;
  int key_column = 0;
  int value_column = 0;
};

/// Splits text into entries; '#' starts a comment. Throws ParseError on lines
/// without '=' or with an empty key.
std::vector<RecordEntry> parse_record(std::string_view text, const std::string& source);

/// Reals accept the forms 1.5, -2e-3, pi, -pi/2, 3*pi/4.
double parse_real(std::string_view token);

/// "%.17g"
std::string format_real(double x);

std::string read_text_file(const std::string& path);

PulseShape parse_pulse(std::string_view text, const std::string& source = "<pulse>");
std::string format_pulse(const PulseShape& shape);

struct BathFile {
  BathModel model = BathModel::preset("static-dephasing", 0.0, 0.0);
  std::string preset;  // empty for explicit matrices
  double omega_b = 1.0;
};
BathFile parse_bath(std::string_view text, const std::string& source = "<bath>");
std::string format_bath(const BathFile& bath);

DesignProblem parse_problem(std::string_view text, const std::string& source = "<problem>");
std::string format_problem(const DesignProblem& problem);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t x);

struct RunManifest {
  std::string command;
  /// (label, content digest) per input file
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string policy;
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  /// Other settings that change the output (grid, sweep, ...).
  std::vector<std::pair<std::string, std::string>> settings;

  std::string text() const;
  std::string digest() const;
  /// "# manifest: ..." and "# manifest-digest: ..." comment lines.
  std::string header() const;
};

/// t,ax,ay,az,psi,nx,ny,nz
std::string trajectory_csv(const AxisAngleTrajectory& traj, const NTrajectory& ntraj);
/// t,vx,vy,vz,va_minus_half_dpsi
std::string amplitude_csv(const AxisAngleTrajectory& traj, const std::vector<Vec3>& v);

/// Flat record of a correction report and the no-go gaps.
std::string format_report(const CorrectionReport& report, const NoGoDiagnostics& gaps);

/// tau_p,defect,uf_defect,magnus_defect,propagation_error rows plus trailing
/// "# slope" summary records.
std::string sweep_csv(const MagnusSweep& sweep);

/// Pulse record of the solution followed by result.* keys; parse_pulse reads it back.
std::string format_solution(const DesignSolution& solution, const FeasibilityCertificate* cert);

}  // namespace shortpulse
