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

#include "shortpulse/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"
#include "shortpulse/numeric_policy.hpp"
#include "shortpulse/quadrature.hpp"
#include "shortpulse/random_pulses.hpp"

namespace shortpulse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPolishObjective = 1e-6;

bool has_target(const DesignProblem& p, Target t) {
  return std::find(p.targets.begin(), p.targets.end(), t) != p.targets.end();
}

int active_count(const DesignProblem& p) {
  return static_cast<int>(std::count(p.components.begin(), p.components.end(), true));
}

int raw_per_component(const DesignProblem& p) {
  return p.symmetric ? p.order + 1 : 2 * p.order + 1;
}

// Layout per active component: cos a_0..a_K, then sin b_1..b_K unless symmetric.
Eigen::MatrixXd constraint_matrix(const DesignProblem& p) {
  const int per = raw_per_component(p);
  const int n = per * active_count(p);
  const double omega = 2.0 * kPi / p.tau_p;
  std::vector<Eigen::VectorXd> rows;
  int block = 0;
  for (int comp = 0; comp < 3; ++comp) {
    if (!p.components[static_cast<std::size_t>(comp)]) continue;
    for (int m : p.zero_derivatives) {
      Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
      // Rows are made dimensionless by tau_p^m / (2 pi)^m.
      for (int k = 0; k <= p.order; ++k) {
        const double scale = std::pow(k * omega * p.tau_p / (2.0 * kPi), m);
        if (m % 2 == 0) {
          row(block + k) = (m / 2 % 2 == 0 ? 1.0 : -1.0) * (m == 0 ? 1.0 : scale);
        } else if (!p.symmetric && k >= 1) {
          row(block + p.order + k) = ((m - 1) / 2 % 2 == 0 ? 1.0 : -1.0) * scale;
        }
      }
      if (m > 0) row(block) = 0.0;
      if (row.norm() > 0.0) rows.push_back(row);
    }
    block += per;
  }
  Eigen::MatrixXd c(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) c.row(static_cast<Eigen::Index>(i)) = rows[i];
  return c;
}

// Orthonormal basis of the null space of the endpoint constraints.
Eigen::MatrixXd null_space(const DesignProblem& p) {
  const Eigen::MatrixXd c = constraint_matrix(p);
  const Eigen::Index n = c.cols();
  if (c.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > tol ? 1 : 0;
  return svd.matrixV().rightCols(n - rank);
}

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

struct Evaluation {
  std::vector<double> residuals;
  CorrectionReport report;
  double objective = kInf;
};

Evaluation evaluate(const DesignProblem& p, const std::vector<double>& point, int grid) {
  Evaluation ev;
  const PulseShape shape = design_shape(p, point);
  const AxisAngleTrajectory traj = integrate_axis_angle(shape, grid);
  const SU2 ideal = SU2::from_axis_angle(Vec3::UnitY(), -p.theta);
  const SU2 err = traj.total_rotation() * ideal.adjoint();
  const double sign = err.w < 0.0 ? -1.0 : 1.0;
  auto& r = ev.residuals;
  for (int i = 0; i < 3; ++i) r.push_back(sign * err.q(i));

  ev.report = evaluate_corrections(n_trajectory(traj), shape.tau_s());
  const double tp = p.tau_p;
  auto push = [&](const Vec3& v, double scale) {
    for (int i = 0; i < 3; ++i) r.push_back(v(i) / scale);
  };
  if (has_target(p, Target::r1)) push(ev.report.r1, tp);
  if (has_target(p, Target::r2a)) push(ev.report.r2a, tp * tp);
  if (has_target(p, Target::r2b)) push(ev.report.r2b, tp * tp);

  if (p.amplitude_bound > 0.0 || p.power_weight > 0.0) {
    const int samples = 129;
    std::vector<double> t(samples), power(samples);
    for (int i = 0; i < samples; ++i) {
      t[static_cast<std::size_t>(i)] = tp * i / (samples - 1);
      const double a = shape.amplitude(t[static_cast<std::size_t>(i)]).norm();
      power[static_cast<std::size_t>(i)] = a * a;
      if (p.amplitude_bound > 0.0) r.push_back(std::max(0.0, a - p.amplitude_bound) * tp / kPi);
    }
    if (p.power_weight > 0.0) {
      r.push_back(std::sqrt(p.power_weight * tp * simpson(t, power)) / kPi);
    }
  }
  double obj = 0.0;
  for (double x : r) obj += x * x;
  ev.objective = std::isfinite(obj) ? obj : kInf;
  return ev;
}

Evaluation safe_evaluate(const DesignProblem& p, const std::vector<double>& point, int grid) {
  try {
    return evaluate(p, point, grid);
  } catch (const std::invalid_argument&) {
    return {};
  } catch (const std::domain_error&) {
    return {};
  }
}

struct RunResult {
  std::vector<double> point;
  Evaluation eval;
  int iterations = 0;
};

RunResult levenberg_marquardt(const DesignProblem& p, std::vector<double> x) {
  RunResult out;
  Evaluation cur = safe_evaluate(p, x, p.grid);
  const auto n = static_cast<Eigen::Index>(x.size());
  double mu = 1e-3;
  int it = 0;
  const ResidualFunction f = [&](const std::vector<double>& y) {
    Evaluation e = safe_evaluate(p, y, p.grid);
    if (e.residuals.empty()) e.residuals.assign(cur.residuals.size(), kInf);
    return e.residuals;
  };
  while (std::isfinite(cur.objective) && it < p.max_iterations && cur.objective > 1e-28) {
    ++it;
    const auto jac = finite_difference_jacobian(f, x, 1e-7);
    const auto m = static_cast<Eigen::Index>(cur.residuals.size());
    Eigen::MatrixXd j(m, n);
    Eigen::VectorXd r(m);
    for (Eigen::Index a = 0; a < m; ++a) {
      r(a) = cur.residuals[static_cast<std::size_t>(a)];
      for (Eigen::Index b = 0; b < n; ++b) {
        j(a, b) = jac[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
    }
    if (!j.allFinite()) break;
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd g = j.transpose() * r;
    Eigen::VectorXd diag = jtj.diagonal().cwiseMax(1e-12 * std::max(1.0, jtj.diagonal().maxCoeff()));
    bool accepted = false;
    double step_norm = 0.0;
    while (mu < 1e16) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += mu * diag;
      const Eigen::VectorXd delta = a.ldlt().solve(-g);
      std::vector<double> trial = x;
      for (Eigen::Index b = 0; b < n; ++b) trial[static_cast<std::size_t>(b)] += delta(b);
      Evaluation next = safe_evaluate(p, trial, p.grid);
      if (next.objective < cur.objective) {
        step_norm = delta.norm();
        const double gain = cur.objective - next.objective;
        x = std::move(trial);
        cur = std::move(next);
        mu = std::max(mu / 2.0, 1e-12);
        accepted = true;
        if (gain < 1e-14 * cur.objective && step_norm < 1e-14) accepted = false;
        break;
      }
      mu *= 3.0;
    }
    if (!accepted) break;
    double xnorm = 0.0;
    for (double v : x) xnorm = std::max(xnorm, std::abs(v));
    if (step_norm < 1e-15 * (1.0 + xnorm)) break;
  }
  out.point = std::move(x);
  out.eval = std::move(cur);
  out.iterations = it;
  return out;
}

// Refines a restart on the polish grid, which then defines the reported values.
RunResult polish(const DesignProblem& p, RunResult run) {
  if (p.polish_grid == 0 || p.polish_grid <= p.grid || run.point.empty()) return run;
  DesignProblem fine = p;
  fine.grid = p.polish_grid;
  if (!(run.eval.objective <= kPolishObjective)) {
    run.eval = safe_evaluate(fine, run.point, fine.grid);
    return run;
  }
  const int earlier = run.iterations;
  RunResult out = levenberg_marquardt(fine, run.point);
  out.iterations += earlier;
  return out;
}

DesignSolution make_solution(const DesignProblem& p, RunResult run) {
  run = polish(p, std::move(run));
  DesignSolution s;
  s.shape = design_shape(p, run.point);
  s.objective = run.eval.objective;
  if (run.eval.residuals.empty()) {
    s.report = safe_evaluate(p, run.point, std::max(p.grid, p.polish_grid)).report;
  } else {
    s.report = run.eval.report;
  }
  s.converged = s.objective <= numeric_policy().converged_objective;
  s.iterations = run.iterations;
  s.point = std::move(run.point);
  return s;
}

}  // namespace

std::string_view to_string(Target t) {
  switch (t) {
    case Target::r1: return "r1";
    case Target::r2a: return "r2a";
    case Target::r2b: return "r2b";
  }
  return "r1";
}

Target target_from_string(std::string_view name) {
  if (name == "r1") return Target::r1;
  if (name == "r2a") return Target::r2a;
  if (name == "r2b") return Target::r2b;
  throw std::invalid_argument("unknown target '" + std::string(name) + "'");
}

std::string_view to_string(FeasibilityCertificate::Regime r) {
  switch (r) {
    case FeasibilityCertificate::Regime::tau_s_equals_tau_p: return "tau_s_equals_tau_p";
    case FeasibilityCertificate::Regime::pi_second_order: return "pi_second_order";
    case FeasibilityCertificate::Regime::open: return "open";
  }
  return "open";
}

void DesignProblem::validate() const {
  if (!(tau_p > 0.0) || !std::isfinite(tau_p)) throw std::invalid_argument("problem: bad tau_p");
  if (!tau_s_free && !(tau_s >= 0.0 && tau_s <= tau_p)) {
    throw std::invalid_argument("problem: tau_s outside [0, tau_p]");
  }
  if (!std::isfinite(theta)) throw std::invalid_argument("problem: bad theta");
  if (order < 1) throw std::invalid_argument("problem: Fourier order must be >= 1");
  if (active_count(*this) == 0) throw std::invalid_argument("problem: no active component");
  for (int m : zero_derivatives) {
    if (m < 0 || m > 16) throw std::invalid_argument("problem: derivative order out of range");
  }
  if (amplitude_bound < 0.0 || power_weight < 0.0) {
    throw std::invalid_argument("problem: negative bound or weight");
  }
  if (targets.empty()) throw std::invalid_argument("problem: no targets");
  if (restarts < 1) throw std::invalid_argument("problem: restarts must be >= 1");
  if (grid < 64) throw std::invalid_argument("problem: grid must be >= 64");
  if (polish_grid != 0 && polish_grid < 64) {
    throw std::invalid_argument("problem: polish_grid must be 0 or >= 64");
  }
  if (max_iterations < 1) throw std::invalid_argument("problem: max_iterations must be >= 1");
}

int DesignProblem::free_parameters() const {
  return static_cast<int>(null_space(*this).cols()) + (tau_s_free ? 1 : 0);
}

PulseShape design_shape(const DesignProblem& p, const std::vector<double>& point) {
  const Eigen::MatrixXd basis = null_space(p);
  const Eigen::Index nz = basis.cols();
  if (static_cast<Eigen::Index>(point.size()) != nz + (p.tau_s_free ? 1 : 0)) {
    throw std::invalid_argument("design_shape: point has the wrong dimension");
  }
  const Eigen::VectorXd raw = basis * Eigen::Map<const Eigen::VectorXd>(point.data(), nz);
  FourierSeries f;
  f.order = p.order;
  const auto k = static_cast<std::size_t>(p.order);
  int block = 0;
  for (int comp = 0; comp < 3; ++comp) {
    f.cos[comp].assign(k + 1, 0.0);
    f.sin[comp].assign(k, 0.0);
    if (!p.components[static_cast<std::size_t>(comp)]) continue;
    for (std::size_t j = 0; j <= k; ++j) f.cos[comp][j] = raw(block + static_cast<Eigen::Index>(j));
    if (!p.symmetric) {
      for (std::size_t j = 0; j < k; ++j) {
        f.sin[comp][j] = raw(block + p.order + 1 + static_cast<Eigen::Index>(j));
      }
    }
    block += raw_per_component(p);
  }
  const double tau_s = p.tau_s_free ? p.tau_p * sigmoid(point.back()) : p.tau_s;
  return PulseShape::fourier(p.tau_p, tau_s, p.theta, std::move(f));
}

std::vector<double> design_residuals(const DesignProblem& p, const std::vector<double>& point) {
  return evaluate(p, point, p.grid).residuals;
}

std::vector<double> random_point(const DesignProblem& p, std::uint64_t seed, std::uint64_t index) {
  const Eigen::MatrixXd basis = null_space(p);
  Rng rng = make_rng(seed, index);
  const double span = 2.0 * kPi / p.tau_p;
  std::uniform_real_distribution<double> coeff(-span, span);
  Eigen::VectorXd raw(basis.rows());
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw(i) = coeff(rng);
  const Eigen::VectorXd z = basis.transpose() * raw;
  std::vector<double> point(z.data(), z.data() + z.size());
  if (p.tau_s_free) point.push_back(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  return point;
}

std::vector<std::vector<double>> finite_difference_jacobian(const ResidualFunction& f,
                                                            const std::vector<double>& x,
                                                            double h) {
  std::vector<std::vector<double>> cols;
  std::size_t m = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double step = h * std::max(1.0, std::abs(x[j]));
    std::vector<double> xp = x, xm = x;
    xp[j] += step;
    xm[j] -= step;
    const auto fp = f(xp);
    const auto fm = f(xm);
    if (fp.size() != fm.size()) throw std::runtime_error("jacobian: residual size changed");
    m = fp.size();
    std::vector<double> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = (fp[i] - fm[i]) / (2.0 * step);
    cols.push_back(std::move(col));
  }
  std::vector<std::vector<double>> jac(m, std::vector<double>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t i = 0; i < m; ++i) jac[i][j] = cols[j][i];
  }
  return jac;
}

JacobianCheck jacobian_check(const ResidualFunction& f, const std::vector<double>& x, double h) {
  const auto coarse = finite_difference_jacobian(f, x, h);
  const auto fine = finite_difference_jacobian(f, x, h / 2.0);
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    for (std::size_t j = 0; j < fine[i].size(); ++j) {
      diff = std::max(diff, std::abs(coarse[i][j] - fine[i][j]));
      scale = std::max(scale, std::abs(fine[i][j]));
    }
  }
  JacobianCheck out;
  out.deviation = scale > 0.0 ? diff / scale : diff;
  out.flagged = !(out.deviation < numeric_policy().jacobian_tol);
  return out;
}

JacobianCheck jacobian_check(const DesignProblem& problem, const std::vector<double>& point,
                             double h) {
  problem.validate();
  return jacobian_check(
      [&](const std::vector<double>& y) { return design_residuals(problem, y); }, point, h);
}

DesignSolution solve_from(const DesignProblem& problem, const std::vector<double>& point) {
  problem.validate();
  DesignSolution s = make_solution(problem, levenberg_marquardt(problem, point));
  s.restarts_used = 1;
  return s;
}

DesignSolution solve(const DesignProblem& problem, std::uint64_t seed) {
  problem.validate();
  const auto n = static_cast<std::size_t>(problem.restarts);
  std::vector<RunResult> runs(n);
  detail::parallel_for(n, [&](std::size_t i) {
    runs[i] = levenberg_marquardt(problem, random_point(problem, seed, i));
  });
  std::size_t best = 0;
  int first_converged = -1;
  const double threshold = numeric_policy().converged_objective;
  for (std::size_t i = 0; i < n; ++i) {
    if (runs[i].eval.objective < runs[best].eval.objective) best = i;
    if (first_converged < 0 && runs[i].eval.objective <= threshold) {
      first_converged = static_cast<int>(i);
    }
  }
  DesignSolution s = make_solution(problem, std::move(runs[best]));
  s.restarts_used = first_converged >= 0 ? first_converged + 1 : problem.restarts;
  return s;
}

FeasibilityCertificate certify(const DesignProblem& p, DesignSolution solution) {
  FeasibilityCertificate cert;
  const bool pi = std::abs(std::remainder(p.theta - kPi, 2.0 * kPi)) < 1e-12;
  if (!p.tau_s_free && p.tau_s == p.tau_p && has_target(p, Target::r1)) {
    cert.regime = FeasibilityCertificate::Regime::tau_s_equals_tau_p;
  } else if (pi && has_target(p, Target::r2a)) {
    cert.regime = FeasibilityCertificate::Regime::pi_second_order;
  }
  cert.best = std::move(solution);
  cert.best_objective = cert.best.objective;
  cert.restarts = p.restarts;

  const PulseShape& shape = cert.best.shape;
  const NTrajectory ntraj =
      n_trajectory(integrate_axis_angle(shape, std::max(p.grid, p.polish_grid)));
  cert.diagnostics = nogo_diagnostics(ntraj, shape.tau_s());
  const double tp = shape.tau_p();
  if (cert.regime == FeasibilityCertificate::Regime::tau_s_equals_tau_p) {
    cert.gap_bound = std::max(0.0, cert.diagnostics.tsp_gap) / tp;
  } else if (cert.regime == FeasibilityCertificate::Regime::pi_second_order) {
    const double after = tp - shape.tau_s();
    cert.gap_bound =
        std::max(0.0, cert.diagnostics.pi2_gap -
                          after * after * cert.diagnostics.pi_condition_defect) / (tp * tp);
  }
  return cert;
}

FeasibilityCertificate feasibility_probe(const DesignProblem& problem, int budget,
                                         std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("feasibility_probe: budget must be >= 1");
  DesignProblem p = problem;
  p.restarts = budget;
  p.validate();
  return certify(p, solve(p, seed));
}

}  // namespace shortpulse
