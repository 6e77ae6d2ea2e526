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

#include "shortpulse/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "shortpulse/quadrature.hpp"

namespace shortpulse {

ParseError::ParseError(std::string source, int line, int column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      source_(std::move(source)),
      line_(line),
      column_(column) {}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> split_tokens(const RecordEntry& e) {
  std::vector<Token> out;
  const std::string& v = e.value;
  std::size_t i = 0;
  while (i < v.size()) {
    while (i < v.size() && (is_space(v[i]) || v[i] == ',')) ++i;
    if (i >= v.size()) break;
    const std::size_t start = i;
    while (i < v.size() && !is_space(v[i]) && v[i] != ',') ++i;
    out.push_back({v.substr(start, i - start), e.value_column + static_cast<int>(start)});
  }
  return out;
}

bool try_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

class RecordReader {
 public:
  RecordReader(std::string_view text, std::string source)
      : source_(std::move(source)), entries_(parse_record(text, source_)) {}

  [[noreturn]] void fail(const RecordEntry& e, int column, const std::string& msg) const {
    throw ParseError(source_, e.line, column, msg);
  }
  [[noreturn]] void fail_top(const std::string& msg) const { throw ParseError(source_, 1, 1, msg); }

  /// Checks keys against the allowed set and rejects duplicates of single keys.
  void check_keys(const std::set<std::string>& single, const std::set<std::string>& repeated,
                  const std::string& ignored_prefix = "") {
    std::set<std::string> seen;
    for (const auto& e : entries_) {
      if (!ignored_prefix.empty() && e.key.rfind(ignored_prefix, 0) == 0) continue;
      if (repeated.count(e.key)) continue;
      if (!single.count(e.key)) fail(e, e.key_column, "unknown key '" + e.key + "'");
      if (!seen.insert(e.key).second) fail(e, e.key_column, "duplicate key '" + e.key + "'");
    }
  }

  const RecordEntry* find(const std::string& key) const {
    for (const auto& e : entries_) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }
  std::vector<const RecordEntry*> all(const std::string& key) const {
    std::vector<const RecordEntry*> out;
    for (const auto& e : entries_) {
      if (e.key == key) out.push_back(&e);
    }
    return out;
  }
  const RecordEntry& require(const std::string& key) const {
    const RecordEntry* e = find(key);
    if (!e) fail_top("missing required key '" + key + "'");
    return *e;
  }

  double real(const RecordEntry& e) const {
    const auto toks = split_tokens(e);
    if (toks.size() != 1) fail(e, e.value_column, "expected one number for '" + e.key + "'");
    return real_token(e, toks[0]);
  }
  double real_token(const RecordEntry& e, const Token& t) const {
    try {
      return parse_real(t.text);
    } catch (const std::invalid_argument&) {
      fail(e, t.column, "not a number: '" + t.text + "'");
    }
  }
  std::vector<double> reals(const RecordEntry& e, std::size_t expected) const {
    const auto toks = split_tokens(e);
    if (toks.size() != expected) {
      fail(e, e.value_column,
           "'" + e.key + "' needs " + std::to_string(expected) + " numbers, got " +
               std::to_string(toks.size()));
    }
    std::vector<double> out;
    for (const auto& t : toks) out.push_back(real_token(e, t));
    return out;
  }
  long integer(const RecordEntry& e) const {
    const auto toks = split_tokens(e);
    if (toks.size() != 1) fail(e, e.value_column, "expected one integer for '" + e.key + "'");
    return integer_token(e, toks[0]);
  }
  long integer_token(const RecordEntry& e, const Token& t) const {
    long v = 0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
      fail(e, t.column, "not an integer: '" + t.text + "'");
    }
    return v;
  }
  bool boolean(const RecordEntry& e) const {
    const auto toks = split_tokens(e);
    if (toks.size() == 1) {
      if (toks[0].text == "true" || toks[0].text == "1") return true;
      if (toks[0].text == "false" || toks[0].text == "0") return false;
    }
    fail(e, e.value_column, "expected true or false for '" + e.key + "'");
  }
  std::string word(const RecordEntry& e) const {
    const auto toks = split_tokens(e);
    if (toks.size() != 1) fail(e, e.value_column, "expected one word for '" + e.key + "'");
    return toks[0].text;
  }

  void check_schema(const std::set<std::string>& kinds) const {
    const RecordEntry& v = require("schema_version");
    if (integer(v) != kSchemaVersion) {
      fail(v, v.value_column, "unsupported schema_version (expected " +
                                  std::to_string(kSchemaVersion) + ")");
    }
    if (const RecordEntry* k = find("kind")) {
      const std::string kind = word(*k);
      if (!kinds.count(kind)) fail(*k, k->value_column, "unexpected kind '" + kind + "'");
    }
  }

  std::string kind() const {
    const RecordEntry* k = find("kind");
    return k ? word(*k) : std::string();
  }

 private:
  std::string source_;
  std::vector<RecordEntry> entries_;
};

const char* kAxisNames[3] = {"x", "y", "z"};

void append(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += '\n';
}

std::string join_reals(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += format_real(xs[i]);
  }
  return s;
}

}  // namespace

std::vector<RecordEntry> parse_record(std::string_view text, const std::string& source) {
  std::vector<RecordEntry> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line_no, static_cast<int>(first) + 1, "expected 'key = value'");
    }
    std::size_t key_end = eq;
    while (key_end > first && is_space(line[key_end - 1])) --key_end;
    if (key_end == first) {
      throw ParseError(source, line_no, static_cast<int>(eq) + 1, "empty key");
    }
    RecordEntry e;
    e.key = line.substr(first, key_end - first);
    e.line = line_no;
    e.key_column = static_cast<int>(first) + 1;
    for (char c : e.key) {
      if (is_space(c)) throw ParseError(source, line_no, e.key_column, "key contains blanks");
    }
    std::size_t v0 = eq + 1;
    while (v0 < line.size() && is_space(line[v0])) ++v0;
    std::size_t v1 = line.size();
    while (v1 > v0 && is_space(line[v1 - 1])) --v1;
    e.value = line.substr(v0, v1 - v0);
    e.value_column = static_cast<int>(v0) + 1;
    out.push_back(std::move(e));
    if (end == text.size()) break;
  }
  return out;
}

double parse_real(std::string_view token) {
  double x = 0.0;
  if (try_number(token, x)) return x;
  static const std::regex pi_form(R"(^([+-]?)(?:([0-9.eE+-]+)\*)?pi(?:/([0-9.eE+-]+))?$)");
  const std::string s(token);
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    double mul = 1.0, div = 1.0;
    if (m[2].matched && !try_number(m[2].str(), mul)) throw std::invalid_argument("bad real");
    if (m[3].matched && (!try_number(m[3].str(), div) || div == 0.0)) {
      throw std::invalid_argument("bad real");
    }
    const double v = mul * std::numbers::pi / div;
    return m[1].str() == "-" ? -v : v;
  }
  throw std::invalid_argument("bad real: " + s);
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------------- pulses

PulseShape parse_pulse(std::string_view text, const std::string& source) {
  RecordReader r(text, source);
  r.check_schema({"pulse", "solution"});
  const bool solution = r.kind() == "solution";
  r.check_keys({"schema_version", "kind", "representation", "tau_p", "tau_s", "theta", "order",
                "cos.x", "cos.y", "cos.z", "sin.x", "sin.y", "sin.z"},
               {"segment", "sample"}, solution ? "result." : "");

  const RecordEntry& rep_entry = r.require("representation");
  Representation rep;
  try {
    rep = representation_from_string(r.word(rep_entry));
  } catch (const std::invalid_argument&) {
    r.fail(rep_entry, rep_entry.value_column, "unknown representation");
  }
  const double tau_p = r.real(r.require("tau_p"));
  const RecordEntry* ts = r.find("tau_s");
  const double tau_s = ts ? r.real(*ts) : 0.5 * tau_p;
  const double theta = r.real(r.require("theta"));

  auto forbid = [&](const std::string& key) {
    if (const RecordEntry* e = r.find(key)) {
      r.fail(*e, e->key_column, "'" + key + "' does not apply to " + std::string(to_string(rep)));
    }
  };

  switch (rep) {
    case Representation::fourier: {
      forbid("segment");
      forbid("sample");
      const RecordEntry& oe = r.require("order");
      const long order = r.integer(oe);
      if (order < 0 || order > 64) r.fail(oe, oe.value_column, "order must be in 0..64");
      FourierSeries f;
      f.order = static_cast<int>(order);
      for (int i = 0; i < 3; ++i) {
        const std::string c = std::string("cos.") + kAxisNames[i];
        const std::string s = std::string("sin.") + kAxisNames[i];
        if (const RecordEntry* e = r.find(c)) f.cos[i] = r.reals(*e, f.order + 1);
        if (const RecordEntry* e = r.find(s)) {
          f.sin[i] = r.reals(*e, static_cast<std::size_t>(f.order));
        }
      }
      return PulseShape::fourier(tau_p, tau_s, theta, std::move(f));
    }
    case Representation::piecewise_constant: {
      forbid("sample");
      forbid("order");
      std::vector<Segment> segs;
      for (const RecordEntry* e : r.all("segment")) {
        const auto x = r.reals(*e, 5);
        segs.push_back({x[0], x[1], Vec3(x[2], x[3], x[4])});
      }
      if (segs.empty()) r.fail_top("piecewise_constant pulse needs 'segment' lines");
      return PulseShape::piecewise_constant(tau_p, tau_s, theta, std::move(segs));
    }
    case Representation::axis_angle_samples: {
      forbid("segment");
      forbid("order");
      std::vector<AxisAngleSample> samples;
      for (const RecordEntry* e : r.all("sample")) {
        const auto x = r.reals(*e, 5);
        samples.push_back({x[0], Vec3(x[1], x[2], x[3]), x[4]});
      }
      if (samples.empty()) r.fail_top("axis_angle_samples pulse needs 'sample' lines");
      return PulseShape::axis_angle_samples(tau_p, tau_s, theta, std::move(samples));
    }
  }
  r.fail_top("unreachable representation");
}

namespace {

std::string pulse_body(const PulseShape& shape) {
  std::string out;
  append(out, "representation", std::string(to_string(shape.representation())));
  append(out, "tau_p", format_real(shape.tau_p()));
  append(out, "tau_s", format_real(shape.tau_s()));
  append(out, "theta", format_real(shape.theta()));
  switch (shape.representation()) {
    case Representation::fourier: {
      const auto& f = shape.fourier_series();
      append(out, "order", std::to_string(f.order));
      for (int i = 0; i < 3; ++i) {
        append(out, std::string("cos.") + kAxisNames[i], join_reals(f.cos[i]));
        if (f.order > 0) append(out, std::string("sin.") + kAxisNames[i], join_reals(f.sin[i]));
      }
      break;
    }
    case Representation::piecewise_constant:
      for (const auto& s : shape.segments()) {
        append(out, "segment",
               join_reals({s.begin, s.end, s.amplitude(0), s.amplitude(1), s.amplitude(2)}));
      }
      break;
    case Representation::axis_angle_samples:
      for (const auto& s : shape.samples()) {
        append(out, "sample", join_reals({s.t, s.axis(0), s.axis(1), s.axis(2), s.psi}));
      }
      break;
  }
  return out;
}

}  // namespace

std::string format_pulse(const PulseShape& shape) {
  std::string out;
  append(out, "schema_version", std::to_string(kSchemaVersion));
  append(out, "kind", "pulse");
  return out + pulse_body(shape);
}

// -------------------------------------------------------------------- baths

BathFile parse_bath(std::string_view text, const std::string& source) {
  RecordReader r(text, source);
  r.check_schema({"bath"});
  r.check_keys({"schema_version", "kind", "preset", "omega_b", "lambda", "dim_b", "h_b.re",
                "h_b.im", "a.re", "a.im"},
               {});
  BathFile out;
  const double lambda = r.real(r.require("lambda"));
  if (const RecordEntry* p = r.find("preset")) {
    for (const char* key : {"dim_b", "h_b.re", "h_b.im", "a.re", "a.im"}) {
      if (const RecordEntry* e = r.find(key)) {
        r.fail(*e, e->key_column, "'" + std::string(key) + "' cannot be combined with a preset");
      }
    }
    out.preset = r.word(*p);
    const auto& names = BathModel::preset_names();
    if (std::find(names.begin(), names.end(), out.preset) == names.end()) {
      r.fail(*p, p->value_column, "unknown preset '" + out.preset + "'");
    }
    if (const RecordEntry* w = r.find("omega_b")) out.omega_b = r.real(*w);
    out.model = BathModel::preset(out.preset, out.omega_b, lambda);
    return out;
  }
  if (const RecordEntry* w = r.find("omega_b")) {
    r.fail(*w, w->key_column, "'omega_b' only applies to presets");
  }
  const RecordEntry& de = r.require("dim_b");
  const long dim = r.integer(de);
  if (dim < 1 || dim > 16) r.fail(de, de.value_column, "dim_b must be in 1..16");
  const auto n = static_cast<std::size_t>(dim * dim);
  auto matrix = [&](const std::string& name) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    const auto re = r.reals(r.require(name + ".re"), n);
    std::vector<double> im(n, 0.0);
    if (const RecordEntry* e = r.find(name + ".im")) im = r.reals(*e, n);
    for (long i = 0; i < dim; ++i) {
      for (long j = 0; j < dim; ++j) {
        const auto k = static_cast<std::size_t>(i * dim + j);
        m(i, j) = Complex(re[k], im[k]);
      }
    }
    return m;
  };
  out.model = BathModel::from_operators(matrix("h_b"), matrix("a"), lambda);
  return out;
}

std::string format_bath(const BathFile& bath) {
  std::string out;
  append(out, "schema_version", std::to_string(kSchemaVersion));
  append(out, "kind", "bath");
  append(out, "lambda", format_real(bath.model.lambda()));
  if (!bath.preset.empty()) {
    append(out, "preset", bath.preset);
    append(out, "omega_b", format_real(bath.omega_b));
    return out;
  }
  const int d = bath.model.dim_b();
  append(out, "dim_b", std::to_string(d));
  auto dump = [&](const std::string& name, const ComplexMatrix& m) {
    std::vector<double> re, im;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        re.push_back(m(i, j).real());
        im.push_back(m(i, j).imag());
      }
    }
    append(out, name + ".re", join_reals(re));
    append(out, name + ".im", join_reals(im));
  };
  dump("h_b", bath.model.h_b());
  dump("a", bath.model.a());
  return out;
}

// ----------------------------------------------------------------- problems

DesignProblem parse_problem(std::string_view text, const std::string& source) {
  RecordReader r(text, source);
  r.check_schema({"problem"});
  r.check_keys({"schema_version", "kind", "theta", "tau_p", "tau_s", "order", "components",
                "symmetric", "zero_derivatives", "amplitude_bound", "power_weight", "targets",
                "restarts", "grid", "polish_grid", "max_iterations"},
               {});
  DesignProblem p;
  p.theta = r.real(r.require("theta"));
  if (const RecordEntry* e = r.find("tau_p")) p.tau_p = r.real(*e);
  p.tau_s = 0.5 * p.tau_p;
  if (const RecordEntry* e = r.find("tau_s")) {
    if (r.word(*e) == "free") {
      p.tau_s_free = true;
    } else {
      p.tau_s = r.real(*e);
    }
  }
  const RecordEntry& oe = r.require("order");
  p.order = static_cast<int>(r.integer(oe));
  if (p.order < 1 || p.order > 32) r.fail(oe, oe.value_column, "order must be in 1..32");
  if (const RecordEntry* e = r.find("components")) {
    p.components = {false, false, false};
    for (const auto& t : split_tokens(*e)) {
      if (t.text == "x") p.components[0] = true;
      else if (t.text == "y") p.components[1] = true;
      else if (t.text == "z") p.components[2] = true;
      else r.fail(*e, t.column, "unknown component '" + t.text + "'");
    }
  }
  if (const RecordEntry* e = r.find("symmetric")) p.symmetric = r.boolean(*e);
  if (const RecordEntry* e = r.find("zero_derivatives")) {
    for (const auto& t : split_tokens(*e)) {
      const long m = r.integer_token(*e, t);
      if (m < 0 || m > 16) r.fail(*e, t.column, "derivative order must be in 0..16");
      p.zero_derivatives.push_back(static_cast<int>(m));
    }
  }
  if (const RecordEntry* e = r.find("amplitude_bound")) p.amplitude_bound = r.real(*e);
  if (const RecordEntry* e = r.find("power_weight")) p.power_weight = r.real(*e);
  const RecordEntry& te = r.require("targets");
  p.targets.clear();
  for (const auto& t : split_tokens(te)) {
    try {
      p.targets.push_back(target_from_string(t.text));
    } catch (const std::invalid_argument&) {
      r.fail(te, t.column, "unknown target '" + t.text + "'");
    }
  }
  if (p.targets.empty()) r.fail(te, te.value_column, "no targets");
  auto int_key = [&](const char* key, int& dst) {
    if (const RecordEntry* e = r.find(key)) dst = static_cast<int>(r.integer(*e));
  };
  int_key("restarts", p.restarts);
  int_key("grid", p.grid);
  int_key("polish_grid", p.polish_grid);
  int_key("max_iterations", p.max_iterations);
  return p;
}

std::string format_problem(const DesignProblem& p) {
  std::string out;
  append(out, "schema_version", std::to_string(kSchemaVersion));
  append(out, "kind", "problem");
  append(out, "theta", format_real(p.theta));
  append(out, "tau_p", format_real(p.tau_p));
  append(out, "tau_s", p.tau_s_free ? "free" : format_real(p.tau_s));
  append(out, "order", std::to_string(p.order));
  std::string comps;
  for (int i = 0; i < 3; ++i) {
    if (p.components[static_cast<std::size_t>(i)]) comps += std::string(comps.empty() ? "" : " ") + kAxisNames[i];
  }
  append(out, "components", comps);
  append(out, "symmetric", p.symmetric ? "true" : "false");
  std::string zd;
  for (int m : p.zero_derivatives) zd += (zd.empty() ? "" : " ") + std::to_string(m);
  append(out, "zero_derivatives", zd);
  append(out, "amplitude_bound", format_real(p.amplitude_bound));
  append(out, "power_weight", format_real(p.power_weight));
  std::string tg;
  for (Target t : p.targets) tg += (tg.empty() ? "" : " ") + std::string(to_string(t));
  append(out, "targets", tg);
  append(out, "restarts", std::to_string(p.restarts));
  append(out, "grid", std::to_string(p.grid));
  append(out, "polish_grid", std::to_string(p.polish_grid));
  append(out, "max_iterations", std::to_string(p.max_iterations));
  return out;
}

// ----------------------------------------------------------------- manifest

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string RunManifest::text() const {
  std::string s = "command=" + command;
  for (const auto& [label, digest] : inputs) s += "; input:" + label + "=" + digest;
  for (const auto& [key, value] : settings) s += "; " + key + "=" + value;
  s += "; seed=" + std::to_string(seed);
  s += "; version=" + version;
  s += "; policy=" + policy;
  return s;
}

std::string RunManifest::digest() const { return hex64(fnv1a(text())); }

std::string RunManifest::header() const {
  return "# manifest: " + text() + "\n# manifest-digest: " + digest() + "\n";
}

// ---------------------------------------------------------------- exporters

std::string trajectory_csv(const AxisAngleTrajectory& traj, const NTrajectory& ntraj) {
  std::string out = "t,ax,ay,az,psi,nx,ny,nz\n";
  const std::size_t header = out.size();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Vec3& a = traj.axis()[i];
    const Vec3& n = ntraj.nhat()[i];
    out += join_reals({traj.time()[i], a(0), a(1), a(2), traj.psi()[i], n(0), n(1), n(2)});
    out += '\n';
  }
  std::replace(out.begin() + static_cast<std::ptrdiff_t>(header), out.end(), ' ', ',');
  return out;
}

std::string amplitude_csv(const AxisAngleTrajectory& traj, const std::vector<Vec3>& v) {
  const std::vector<double> dpsi = nodal_derivative(traj.time(), traj.psi());
  std::string out = "t,vx,vy,vz,va_minus_half_dpsi\n";
  const std::size_t header = out.size();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double eq = v[i].dot(traj.axis()[i]) - 0.5 * dpsi[i];
    out += join_reals({traj.time()[i], v[i](0), v[i](1), v[i](2), eq});
    out += '\n';
  }
  std::replace(out.begin() + static_cast<std::ptrdiff_t>(header), out.end(), ' ', ',');
  return out;
}

std::string format_report(const CorrectionReport& rep, const NoGoDiagnostics& gaps) {
  std::string out;
  append(out, "tau_p", format_real(rep.tau_p));
  append(out, "tau_s", format_real(rep.tau_s));
  append(out, "r1", join_reals({rep.r1(0), rep.r1(1), rep.r1(2)}));
  append(out, "r2a", join_reals({rep.r2a(0), rep.r2a(1), rep.r2a(2)}));
  append(out, "r2b", join_reals({rep.r2b(0), rep.r2b(1), rep.r2b(2)}));
  append(out, "r1_norm", format_real(rep.r1_norm));
  append(out, "r2a_norm", format_real(rep.r2a_norm));
  append(out, "r2b_norm", format_real(rep.r2b_norm));
  append(out, "r1_normalized", format_real(rep.r1_normalized()));
  append(out, "r2a_normalized", format_real(rep.r2a_normalized()));
  append(out, "r2b_normalized", format_real(rep.r2b_normalized()));
  append(out, "r1_error", format_real(rep.r1_error));
  append(out, "r2a_error", format_real(rep.r2a_error));
  append(out, "r2b_error", format_real(rep.r2b_error));
  append(out, "converged", rep.converged ? "true" : "false");
  append(out, "r2b_valid", rep.r2b_valid ? "true" : "false");
  append(out, "tsp_gap", format_real(gaps.tsp_gap));
  append(out, "pi2_gap", format_real(gaps.pi2_gap));
  append(out, "pi_condition_defect", format_real(gaps.pi_condition_defect));
  append(out, "pi_condition_holds", gaps.pi_condition_holds ? "true" : "false");
  return out;
}

std::string sweep_csv(const MagnusSweep& sweep) {
  std::string out = "tau_p,defect,uf_defect,magnus_defect,propagation_error\n";
  for (const auto& p : sweep.points) {
    out += format_real(p.tau_p) + "," + format_real(p.defect) + "," + format_real(p.uf_defect) +
           "," + format_real(p.magnus_defect) + "," + format_real(p.propagation_error) + "\n";
  }
  auto fit = [&](const char* name, const SlopeFit& f) {
    out += std::string("# slope,") + name + "," + format_real(f.slope) + "," +
           format_real(f.slope_stderr) + "," + format_real(f.intercept) + "," +
           std::to_string(f.points) + "\n";
  };
  fit("defect", sweep.defect);
  fit("uf_defect", sweep.uf);
  fit("magnus_defect", sweep.magnus);
  return out;
}

std::string format_solution(const DesignSolution& s, const FeasibilityCertificate* cert) {
  std::string out;
  append(out, "schema_version", std::to_string(kSchemaVersion));
  append(out, "kind", "solution");
  out += pulse_body(s.shape);
  append(out, "result.converged", s.converged ? "true" : "false");
  append(out, "result.objective", format_real(s.objective));
  append(out, "result.restarts_used", std::to_string(s.restarts_used));
  append(out, "result.iterations", std::to_string(s.iterations));
  append(out, "result.r1_normalized", format_real(s.report.r1_normalized()));
  append(out, "result.r2a_normalized", format_real(s.report.r2a_normalized()));
  append(out, "result.r2b_normalized", format_real(s.report.r2b_normalized()));
  append(out, "result.point", join_reals(s.point));
  if (cert) {
    append(out, "result.regime", std::string(to_string(cert->regime)));
    append(out, "result.tsp_gap", format_real(cert->diagnostics.tsp_gap));
    append(out, "result.pi2_gap", format_real(cert->diagnostics.pi2_gap));
    append(out, "result.pi_condition_defect", format_real(cert->diagnostics.pi_condition_defect));
    if (cert->gap_bound) {
      append(out, "result.gap_bound", format_real(*cert->gap_bound));
      append(out, "result.certificate_holds", cert->holds() ? "true" : "false");
    }
  }
  return out;
}

}  // namespace shortpulse
