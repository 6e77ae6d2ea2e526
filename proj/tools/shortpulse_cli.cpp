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

// shortpulse command-line tool.
//
// Exit codes: 0 pass, 1 check failed, 2 syntax or usage error,
// 3 invariant violation, 4 slope fit failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shortpulse/bath.hpp"
#include "shortpulse/corrections.hpp"
#include "shortpulse/io.hpp"
#include "shortpulse/numeric_policy.hpp"
#include "shortpulse/optimizer.hpp"
#include "shortpulse/pulse.hpp"
#include "shortpulse/quadrature.hpp"
#include "shortpulse/random_pulses.hpp"

namespace sp = shortpulse;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInvariant = 3, kFit = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string path;
  std::string text;
  std::string digest;
};

Input load(const std::string& path) {
  Input in;
  in.path = path;
  try {
    in.text = sp::read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  in.digest = sp::hex64(sp::fnv1a(in.text));
  return in;
}

sp::RunManifest manifest(const std::string& command, std::uint64_t seed = 0) {
  sp::RunManifest m;
  m.command = command;
  m.policy = sp::numeric_policy().serialize();
  m.seed = seed;
  return m;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + out_path + "'");
  f << content;
}

void note(const std::string& key, const std::string& value) {
  std::cerr << key << " = " << value << '\n';
}

sp::AxisAngleTrajectory trajectory_of(const sp::PulseShape& shape, int grid) {
  if (shape.representation() == sp::Representation::axis_angle_samples) {
    return sp::trajectory_from_samples(shape);
  }
  return sp::integrate_axis_angle(shape, grid);
}

void require_grid(int grid, int minimum) {
  if (grid < minimum) {
    throw UsageError("--grid must be at least " + std::to_string(minimum));
  }
}

// ------------------------------------------------------------------ convert

struct ConvertArgs {
  std::string pulse;
  std::string direction = "trajectory";
  int grid = 1024;
  std::string out;
};

int run_convert(const ConvertArgs& a) {
  require_grid(a.grid, 64);
  const Input in = load(a.pulse);
  const sp::PulseShape shape = sp::parse_pulse(in.text, a.pulse);
  const sp::AxisAngleTrajectory traj = trajectory_of(shape, a.grid);

  sp::RunManifest m = manifest("convert");
  m.inputs.emplace_back("pulse", in.digest);
  m.settings.emplace_back("direction", a.direction);
  m.settings.emplace_back("grid", std::to_string(a.grid));

  const std::vector<sp::Vec3> v = sp::amplitude_from_axis_angle(traj);
  double err = 0.0, scale = 0.0, eq = 0.0;
  const std::vector<double> dpsi = sp::nodal_derivative(traj.time(), traj.psi());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.time()[i];
    const sp::Vec3 exact = shape.amplitude(t);
    err = std::max(err, (v[i] - exact).norm());
    scale = std::max(scale, exact.norm());
    eq = std::max(eq, std::abs(v[i].dot(traj.axis()[i]) - 0.5 * dpsi[i]));
  }

  std::string body;
  if (a.direction == "trajectory") {
    body = sp::trajectory_csv(traj, sp::n_trajectory(traj));
  } else if (a.direction == "amplitude") {
    body = sp::amplitude_csv(traj, v);
  } else if (a.direction == "samples") {
    std::vector<sp::AxisAngleSample> samples;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      samples.push_back({traj.time()[i], traj.axis()[i], traj.psi()[i]});
    }
    body = sp::format_pulse(sp::PulseShape::axis_angle_samples(
        shape.tau_p(), shape.tau_s(), shape.theta(), std::move(samples)));
  } else {
    throw UsageError("unknown --direction '" + a.direction + "'");
  }
  emit(a.out, m.header() + body);

  note("psi_span", sp::format_real(traj.psi().back() - traj.psi().front()));
  note("round_trip_defect", sp::format_real(scale > 0.0 ? err / scale : err));
  note("axis_projection_defect", sp::format_real(eq));
  return kPass;
}

// -------------------------------------------------------------- corrections

struct CorrectionsArgs {
  std::string pulse;
  std::string tau_s;
  std::vector<std::string> targets = {"r1"};
  double threshold = sp::numeric_policy().residual_threshold;
  int grid = 8192;
  std::string out;
};

int run_corrections(const CorrectionsArgs& a) {
  require_grid(a.grid, 64);
  if (!(a.threshold >= 0.0)) throw UsageError("--threshold must be nonnegative");
  std::vector<sp::Target> targets;
  for (const auto& t : a.targets) {
    try {
      targets.push_back(sp::target_from_string(t));
    } catch (const std::invalid_argument&) {
      throw UsageError("unknown target '" + t + "'");
    }
  }
  const Input in = load(a.pulse);
  sp::PulseShape shape = sp::parse_pulse(in.text, a.pulse);

  sp::RunManifest m = manifest("corrections");
  m.inputs.emplace_back("pulse", in.digest);
  m.settings.emplace_back("grid", std::to_string(a.grid));
  m.settings.emplace_back("threshold", sp::format_real(a.threshold));
  std::string tg;
  for (const auto& t : a.targets) tg += (tg.empty() ? "" : " ") + t;
  m.settings.emplace_back("targets", tg);

  sp::AxisAngleTrajectory traj = [&] {
    if (a.tau_s.empty()) return trajectory_of(shape, a.grid);
    double ts = 0.0;
    try {
      ts = sp::parse_real(a.tau_s);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad --tau-s '" + a.tau_s + "'");
    }
    m.settings.emplace_back("tau_s", sp::format_real(ts));
    shape = shape.with_tau_s(ts);
    return sp::integrate_axis_angle(shape, a.grid);
  }();

  const sp::NTrajectory n = sp::n_trajectory(traj);
  const sp::CorrectionReport rep = sp::evaluate_corrections(n, shape.tau_s());
  const sp::NoGoDiagnostics gaps = sp::nogo_diagnostics(n, shape.tau_s());

  bool pass = true;
  for (sp::Target t : targets) {
    const double r = t == sp::Target::r1    ? rep.r1_normalized()
                     : t == sp::Target::r2a ? rep.r2a_normalized()
                                            : rep.r2b_normalized();
    pass = pass && r <= a.threshold;
  }
  std::string body = sp::format_report(rep, gaps);
  body += "pass = " + std::string(pass ? "true" : "false") + "\n";
  emit(a.out, m.header() + body);
  return pass ? kPass : kFail;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  std::string pulse;
  std::string bath;
  std::string sweep = "1e-3:1e-1:6";
  std::string quantity = "uf";
  double expect = std::numeric_limits<double>::quiet_NaN();
  double band = 0.15;
  double min_slope = std::numeric_limits<double>::quiet_NaN();
  int grid = 4096;
  std::string out;
};

constexpr double kNoiseFloor = 1e-10;

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--sweep expects min:max:points");
  double lo = 0.0, hi = 0.0;
  long n = 0;
  try {
    lo = sp::parse_real(parts[0]);
    hi = sp::parse_real(parts[1]);
    std::size_t used = 0;
    n = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("points");
  } catch (const std::exception&) {
    throw UsageError("--sweep expects min:max:points, got '" + text + "'");
  }
  if (!(lo > 0.0) || !(hi > lo)) throw UsageError("--sweep needs 0 < min < max");
  if (n < 4) throw UsageError("--sweep needs at least 4 points");
  if (hi / lo < 10.0 * (1.0 - 1e-9)) throw UsageError("--sweep must span at least one decade");
  return sp::log_space(lo, hi, static_cast<int>(n));
}

int run_verify(const VerifyArgs& a) {
  require_grid(a.grid, 256);
  if (a.quantity != "defect" && a.quantity != "uf" && a.quantity != "magnus") {
    throw UsageError("--quantity must be defect, uf or magnus");
  }
  if (!(a.band >= 0.0)) throw UsageError("--band must be nonnegative");
  const std::vector<double> taus = parse_sweep(a.sweep);
  const Input pin = load(a.pulse);
  const Input bin = load(a.bath);
  const sp::PulseShape shape = sp::parse_pulse(pin.text, a.pulse);
  const sp::BathFile bath = sp::parse_bath(bin.text, a.bath);

  sp::RunManifest m = manifest("verify");
  m.inputs.emplace_back("pulse", pin.digest);
  m.inputs.emplace_back("bath", bin.digest);
  m.settings.emplace_back("sweep", a.sweep);
  m.settings.emplace_back("grid", std::to_string(a.grid));
  m.settings.emplace_back("quantity", a.quantity);

  const sp::MagnusSweep sweep = sp::magnus_consistency(shape, bath.model, taus, a.grid);
  const sp::SlopeFit& fit = a.quantity == "defect" ? sweep.defect
                            : a.quantity == "uf"   ? sweep.uf
                                                   : sweep.magnus;
  emit(a.out, m.header() + sp::sweep_csv(sweep));

  double largest = 0.0;
  for (const auto& p : sweep.points) {
    largest = std::max(largest, a.quantity == "defect" ? p.defect
                                : a.quantity == "uf"   ? p.uf_defect
                                                       : p.magnus_defect);
  }
  if (largest < kNoiseFloor) {
    throw sp::FitError("every " + a.quantity + " value is below " +
                       sp::format_real(kNoiseFloor) + "; nothing to fit");
  }

  bool pass = true;
  if (!std::isnan(a.expect)) pass = pass && std::abs(fit.slope - a.expect) <= a.band;
  if (!std::isnan(a.min_slope)) pass = pass && fit.slope >= a.min_slope;
  note("quantity", a.quantity);
  note("slope", sp::format_real(fit.slope));
  note("slope_stderr", sp::format_real(fit.slope_stderr));
  note("pass", pass ? "true" : "false");
  return pass ? kPass : kFail;
}

// -------------------------------------------------------------------- solve

struct SolveArgs {
  std::string problem;
  std::uint64_t seed = 0;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const Input in = load(a.problem);
  const sp::DesignProblem problem = sp::parse_problem(in.text, a.problem);
  problem.validate();

  sp::RunManifest m = manifest("solve", a.seed);
  m.inputs.emplace_back("problem", in.digest);

  const sp::FeasibilityCertificate cert = sp::certify(problem, sp::solve(problem, a.seed));
  emit(a.out, m.header() + sp::format_solution(cert.best, &cert));
  note("converged", cert.best.converged ? "true" : "false");
  note("objective", sp::format_real(cert.best.objective));
  note("regime", std::string(sp::to_string(cert.regime)));
  return cert.best.converged ? kPass : kFail;
}

// --------------------------------------------------------------------- nogo

struct NogoArgs {
  std::string check;
  long samples = 1000;
  std::uint64_t seed = 0;
  int grid = 512;
  std::string out;
};

int run_nogo(const NogoArgs& a) {
  const bool tsp = a.check == "ts-eq-tp";
  if (!tsp && a.check != "pi-second-order") {
    throw UsageError("unknown check '" + a.check + "' (ts-eq-tp or pi-second-order)");
  }
  if (a.samples < 1) throw UsageError("--samples must be at least 1");
  require_grid(a.grid, 64);

  sp::RunManifest m = manifest("nogo", a.seed);
  m.settings.emplace_back("check", a.check);
  m.settings.emplace_back("samples", std::to_string(a.samples));
  m.settings.emplace_back("grid", std::to_string(a.grid));

  std::string body = "index,tau_s,gap,pi_condition_defect\n";
  double min_gap = std::numeric_limits<double>::infinity();
  for (long i = 0; i < a.samples; ++i) {
    sp::Rng rng = sp::make_rng(a.seed, static_cast<std::uint64_t>(i));
    const sp::PulseShape shape =
        tsp ? sp::random_fourier_pulse(rng, 1.0, 1.0,
                                       std::uniform_int_distribution<int>(1, 4)(rng),
                                       0.5 * std::numbers::pi, 3.0 * std::numbers::pi)
            : sp::random_pi_conditioned_pulse(rng, 1.0, 4);
    const sp::NTrajectory n = sp::n_trajectory(sp::integrate_axis_angle(shape, a.grid));
    const sp::NoGoDiagnostics d = sp::nogo_diagnostics(n, shape.tau_s());
    const double gap = tsp ? d.tsp_gap : d.pi2_gap;
    min_gap = std::min(min_gap, gap);
    body += std::to_string(i) + "," + sp::format_real(shape.tau_s()) + "," +
            sp::format_real(gap) + "," + sp::format_real(d.pi_condition_defect) + "\n";
  }
  body += "# min_gap," + sp::format_real(min_gap) + "\n";
  emit(a.out, m.header() + body);

  const bool pass = min_gap >= -sp::numeric_policy().nogo_tol;
  note("min_gap", sp::format_real(min_gap));
  note("pass", pass ? "true" : "false");
  return pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design and verification of short control pulses for a qubit coupled to a bath"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sp::kToolVersion));

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Convert a pulse to a trajectory, amplitude or sample file");
  c->add_option("pulse", convert.pulse, "Pulse file")->required();
  c->add_option("--direction", convert.direction, "trajectory | amplitude | samples");
  c->add_option("--grid", convert.grid, "Integration steps (>= 64)");
  c->add_option("--out", convert.out, "Output file (default stdout)");

  CorrectionsArgs corr;
  auto* r = app.add_subcommand("corrections", "Evaluate the correction residuals of a pulse");
  r->add_option("pulse", corr.pulse, "Pulse or solution file")->required();
  r->add_option("--tau-s", corr.tau_s, "Override the splitting instant");
  r->add_option("--targets", corr.targets, "Residuals that must vanish (r1 r2a r2b)");
  r->add_option("--threshold", corr.threshold, "Pass threshold on normalized residuals");
  r->add_option("--grid", corr.grid, "Integration steps (>= 64)");
  r->add_option("--out", corr.out, "Output file (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Sweep tau_p against the exact propagator and fit slopes");
  v->add_option("pulse", verify.pulse, "Pulse file")->required();
  v->add_option("bath", verify.bath, "Bath file")->required();
  v->add_option("--sweep", verify.sweep, "min:max:points of tau_p (geometric)");
  v->add_option("--quantity", verify.quantity, "defect | uf | magnus");
  v->add_option("--expect", verify.expect, "Expected slope");
  v->add_option("--band", verify.band, "Allowed |slope - expect|");
  v->add_option("--min-slope", verify.min_slope, "Lower bound on the slope");
  v->add_option("--grid", verify.grid, "Propagation steps (>= 256)");
  v->add_option("--out", verify.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Design a pulse whose requested residuals vanish");
  s->add_option("problem", solve.problem, "Problem file")->required();
  s->add_option("--seed", solve.seed, "Restart seed");
  s->add_option("--out", solve.out, "Output file (default stdout)");

  NogoArgs nogo;
  auto* n = app.add_subcommand("nogo", "Randomized check of a no-go gap");
  n->add_option("check", nogo.check, "ts-eq-tp | pi-second-order")->required();
  n->add_option("--samples", nogo.samples, "Number of random trajectories");
  n->add_option("--seed", nogo.seed, "Sampling seed");
  n->add_option("--grid", nogo.grid, "Integration steps (>= 64)");
  n->add_option("--out", nogo.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c) return run_convert(convert);
    if (*r) return run_corrections(corr);
    if (*v) return run_verify(verify);
    if (*s) return run_solve(solve);
    if (*n) return run_nogo(nogo);
  } catch (const sp::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sp::FitError& e) {
    std::cerr << "fit error: " << e.what() << '\n';
    return kFit;
  } catch (const std::exception& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}
