#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "s4gauss/cli.hpp"
#include "s4gauss/error.hpp"

namespace s4g {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::ConfigError, "line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line, const std::string& key) {
  double d = 0.0;
  const char* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, d);
  if (ec != std::errc() || p != end || !std::isfinite(d)) fail(line, "'" + key + "' expects a number, got '" + v + "'");
  return d;
}

double to_positive(const std::string& v, int line, const std::string& key) {
  const double d = to_double(v, line, key);
  if (!(d > 0.0)) fail(line, "'" + key + "' must be positive");
  return d;
}

int to_int(const std::string& v, int line, const std::string& key, int min) {
  int n = 0;
  const char* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, n);
  if (ec != std::errc() || p != end) fail(line, "'" + key + "' expects an integer, got '" + v + "'");
  if (n < min) fail(line, "'" + key + "' must be at least " + std::to_string(min));
  return n;
}

bool to_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  fail(line, "'" + key + "' expects true or false");
}

std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

const std::vector<std::string> kSourceKinds = {"equatorial_sphere", "clifford_torus", "pmc_torus", "grid_file"};

bool is_source_kind(const std::string& k) {
  for (const auto& s : kSourceKinds)
    if (s == k) return true;
  return false;
}

void set_immersion(RunConfig& c, const std::string& key, const std::string& v, int line) {
  ImmersionSpec& s = c.immersion;
  if (key == "kind") {
    if (!is_source_kind(v) && v != "moebius") fail(line, "unknown immersion kind '" + v + "'");
    s.kind = v;
  } else if (key == "inner") {
    if (!is_source_kind(v)) fail(line, "moebius inner must be a catalog kind or grid_file, got '" + v + "'");
    s.inner = v;
  } else if (key == "a") {
    s.a = to_positive(v, line, key);
  } else if (key == "b") {
    s.b = to_positive(v, line, key);
  } else if (key == "radius") {
    s.radius = to_positive(v, line, key);
  } else if (key == "path") {
    s.path = v;
  } else if (key == "center") {
    const auto parts = split_commas(v);
    if (parts.size() != 5) fail(line, "'center' needs five comma-separated numbers");
    for (std::size_t i = 0; i < 5; ++i) s.center[i] = to_double(parts[i], line, key);
  } else if (key == "derivative") {
    if (v == "analytic")
      c.derivative.kind = DerivativeMode::Kind::Analytic;
    else if (v == "finite_difference")
      c.derivative.kind = DerivativeMode::Kind::FiniteDifference;
    else
      fail(line, "'derivative' must be analytic or finite_difference");
  } else if (key == "h") {
    c.derivative.hx = c.derivative.hy = to_positive(v, line, key);
  } else {
    fail(line, "unknown key '" + key + "' in [immersion]");
  }
}

void set_grid(RunConfig& c, const std::string& key, const std::string& v, int line) {
  if (key == "nx")
    c.nx = to_int(v, line, key, 8);
  else if (key == "ny")
    c.ny = to_int(v, line, key, 8);
  else if (key == "n")
    c.nx = c.ny = to_int(v, line, key, 8);
  else
    fail(line, "unknown key '" + key + "' in [grid]");
}

void set_family(RunConfig& c, const std::string& key, const std::string& v, int line) {
  FamilyOptions& f = c.family;
  if (key == "lambda") {
    f.lambda_angles.clear();
    for (const auto& p : split_commas(v)) f.lambda_angles.push_back(to_double(p, line, key));
    if (f.lambda_angles.empty()) fail(line, "'lambda' needs at least one angle");
  } else if (key == "substeps") {
    f.substeps = to_int(v, line, key, 1);
  } else if (key == "retract_every") {
    f.retract_every = to_int(v, line, key, 0);
  } else if (key == "base_i") {
    f.base_i = to_int(v, line, key, 0);
  } else if (key == "base_j") {
    f.base_j = to_int(v, line, key, 0);
  } else {
    fail(line, "unknown key '" + key + "' in [family]");
  }
}

void set_tolerances(RunConfig& c, const std::string& key, const std::string& v, int line) {
  Tolerances& t = c.tol;
  if (key == "conformal")
    t.conformal = to_positive(v, line, key);
  else if (key == "harmonic")
    t.harmonic = to_positive(v, line, key);
  else if (key == "residual") {
    // 0 keeps the grid-derived threshold.
    t.residual = to_double(v, line, key);
    if (t.residual < 0.0) fail(line, "'residual' must be non-negative");
  }
  else if (key == "special")
    t.special = to_positive(v, line, key);
  else if (key == "orthogonality")
    t.orthogonality = to_positive(v, line, key);
  else
    fail(line, "unknown key '" + key + "' in [tolerances]");
}

void set_output(RunConfig& c, const std::string& key, const std::string& v, int line) {
  OutputOptions& o = c.output;
  if (key == "dir") {
    o.dir = v;
  } else if (key == "fields") {
    o.fields = to_bool(v, line, key);
  } else if (key == "mesh") {
    o.mesh = to_bool(v, line, key);
  } else if (key == "obj") {
    o.obj = to_bool(v, line, key);
  } else if (key == "obj_axes") {
    const auto parts = split_commas(v);
    if (parts.size() != 3) fail(line, "'obj_axes' needs three axis indices");
    for (std::size_t i = 0; i < 3; ++i) {
      o.obj_axes[i] = to_int(parts[i], line, key, 0);
      if (o.obj_axes[i] > 4) fail(line, "'obj_axes' entries must lie in 0..4");
    }
  } else {
    fail(line, "unknown key '" + key + "' in [output]");
  }
}

void set_energy(RunConfig& c, const std::string& key, const std::string& v, int line) {
  if (key == "disk_radius")
    c.disk_radius = to_positive(v, line, key);
  else
    fail(line, "unknown key '" + key + "' in [energy]");
}

using Setter = void (*)(RunConfig&, const std::string&, const std::string&, int);

const std::map<std::string, Setter> kSections = {
    {"immersion", set_immersion}, {"grid", set_grid},     {"family", set_family},
    {"tolerances", set_tolerances}, {"output", set_output}, {"energy", set_energy},
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  static const std::regex kEq(R"(\s*=\s*)");
  std::istringstream in(text);
  std::string raw, section;
  int line = 0, ab_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream toks(std::regex_replace(raw, kEq, "="));
    std::string tok;
    while (toks >> tok) {
      if (tok.front() == '[') {
        if (tok.back() != ']' || tok.size() < 3) fail(line, "malformed section header '" + tok + "'");
        section = tok.substr(1, tok.size() - 2);
        if (!kSections.contains(section)) fail(line, "unknown section [" + section + "]");
        continue;
      }
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
        fail(line, "expected key=value, got '" + tok + "'");
      if (section.empty()) fail(line, "key '" + tok.substr(0, eq) + "' before any section header");
      const std::string key = tok.substr(0, eq);
      if (section == "immersion" && (key == "a" || key == "b")) ab_line = line;
      kSections.at(section)(c, key, tok.substr(eq + 1), line);
    }
  }
  const ImmersionSpec& s = c.immersion;
  const bool uses_pmc = s.kind == "pmc_torus" || (s.kind == "moebius" && s.inner == "pmc_torus");
  if (uses_pmc) {
    if (std::abs(s.a * s.a + s.b * s.b - 1.0) > 1e-6)
      fail(ab_line, "pmc_torus needs a^2 + b^2 = 1 within 1e-6");
    if (!(s.a < 1.0 && s.b < 1.0)) fail(ab_line, "pmc_torus needs 0 < a, b < 1");
  }
  const bool uses_file = s.kind == "grid_file" || (s.kind == "moebius" && s.inner == "grid_file");
  if (uses_file && s.path.empty()) fail(line, "grid_file needs 'path'");
  if (s.kind == "moebius" && !(norm(s.center) < 1.0)) fail(line, "moebius center needs |center| < 1");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  RunConfig c = parse_config(ss.str());
  // Grid files are located relative to the config that names them.
  if (!c.immersion.path.empty() && std::filesystem::path(c.immersion.path).is_relative())
    c.immersion.path = (std::filesystem::path(path).parent_path() / c.immersion.path).string();
  return c;
}

ImmersionPtr build_immersion(const ImmersionSpec& spec) {
  auto source = [&spec](const std::string& kind) -> ImmersionPtr {
    if (kind == "equatorial_sphere") return Immersion::equatorial_sphere(spec.radius);
    if (kind == "clifford_torus") return Immersion::clifford_torus();
    if (kind == "pmc_torus") return Immersion::pmc_torus(spec.a, spec.b);
    if (kind == "grid_file") return Immersion::grid_file(spec.path);
    throw Error(ErrorKind::ConfigError, "unknown immersion kind '" + kind + "'");
  };
  if (spec.kind == "moebius") return Immersion::moebius(source(spec.inner), spec.center);
  return source(spec.kind);
}

}  // namespace s4g
