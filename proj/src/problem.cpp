#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "centerkit/errors.hpp"
#include "centerkit/problem.hpp"

namespace centerkit {

namespace {

using nlohmann::json;

std::string line_col(std::string const &text, std::size_t byte)
{
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void check_keys(json const &obj, std::string const &where, std::set<std::string> const &allowed)
{
  if (!obj.is_object()) { throw ParseError(where, "expected an object"); }
  for (auto const &[key, value] : obj.items()) {
    if (!allowed.count(key)) { throw ValidationError(where, "unknown key '" + key + "'"); }
  }
}

int get_int(json const &v, std::string const &where)
{
  if (!v.is_number_integer()) { throw ParseError(where, "expected an integer"); }
  return v.get<int>();
}

double get_double(json const &v, std::string const &where)
{
  if (!v.is_number()) { throw ParseError(where, "expected a number"); }
  return v.get<double>();
}

double get_positive(json const &v, std::string const &where)
{
  double const d = get_double(v, where);
  if (!(d > 0.0)) { throw ValidationError(where, "must be positive"); }
  return d;
}

Coefficient get_coefficient(json const &v, std::string const &where)
{
  if (v.is_number_integer()) { return Coefficient(Rational(v.get<long long>())); }
  if (!v.is_string()) { throw ParseError(where, "expected a coefficient string such as \"3/4\" or \"1/2+1 i\""); }
  try {
    return Coefficient::parse(v.get<std::string>());
  } catch (ValidationError const &e) {
    throw ValidationError(where, e.what());
  } catch (ParseError const &e) {
    throw ParseError(where, e.what());
  }
}

Point get_point(json const &v, std::string const &where)
{
  if (!v.is_array() || v.size() != 2) { throw ParseError(where, "expected [x, y]"); }
  return {get_double(v[0], where + "[0]"), get_double(v[1], where + "[1]")};
}

std::vector<double> get_doubles(json const &v, std::string const &where)
{
  if (!v.is_array()) { throw ParseError(where, "expected an array of numbers"); }
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) { out.push_back(get_double(v[k], where + "[" + std::to_string(k) + "]")); }
  return out;
}

Poly2 get_series(json const &v, std::string const &where, int truncation, bool real)
{
  if (!v.is_array()) { throw ParseError(where, "expected a list of [i, j, coefficient] terms"); }
  Poly2 out(truncation, real);
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::string const at = where + "[" + std::to_string(k) + "]";
    json const &term = v[k];
    if (!term.is_array() || term.size() != 3) { throw ParseError(at, "expected [i, j, coefficient]"); }
    int const i = get_int(term[0], at + "[0]");
    int const j = get_int(term[1], at + "[1]");
    if (i < 0 || j < 0) { throw ValidationError(at, "negative exponent"); }
    if (i + j > truncation) {
      throw ValidationError(at, "exponent i + j = " + std::to_string(i + j) + " exceeds truncation "
                                  + std::to_string(truncation));
    }
    Coefficient const c = get_coefficient(term[2], at + "[2]");
    if (real && !c.is_real()) { throw ValidationError(at, "complex coefficient in a real field"); }
    out.add(i, j, c);
  }
  return out;
}

void parse_field_analysis(json const &a, FieldAnalysis &out)
{
  check_keys(a, "analysis", {"truncation", "radii", "tol", "segment", "t_budget", "scan", "domain_box"});
  if (a.contains("truncation")) { out.lyapunov_truncation = get_int(a["truncation"], "analysis.truncation"); }
  if (a.contains("radii")) { out.radii = get_doubles(a["radii"], "analysis.radii"); }
  if (a.contains("tol")) { out.tol = get_positive(a["tol"], "analysis.tol"); }
  if (a.contains("t_budget")) { out.t_budget = get_positive(a["t_budget"], "analysis.t_budget"); }
  if (a.contains("domain_box")) { out.domain_box = get_positive(a["domain_box"], "analysis.domain_box"); }
  if (a.contains("segment")) {
    json const &s = a["segment"];
    check_keys(s, "analysis.segment", {"direction", "length"});
    if (s.contains("direction")) { out.segment_direction = get_point(s["direction"], "analysis.segment.direction"); }
    if (s.contains("length")) { out.segment_length = get_positive(s["length"], "analysis.segment.length"); }
  }
  if (a.contains("scan")) {
    json const &s = a["scan"];
    check_keys(s, "analysis.scan", {"points", "direction", "length", "k", "t_budget", "tol"});
    if (s.contains("points")) {
      json const &pts = s["points"];
      if (!pts.is_array()) { throw ParseError("analysis.scan.points", "expected a list of [x, y]"); }
      for (std::size_t k = 0; k < pts.size(); ++k) {
        out.scan_points.push_back(get_point(pts[k], "analysis.scan.points[" + std::to_string(k) + "]"));
      }
    }
    if (s.contains("direction")) { out.scan_direction = get_point(s["direction"], "analysis.scan.direction"); }
    if (s.contains("length")) { out.scan_length = get_positive(s["length"], "analysis.scan.length"); }
    if (s.contains("k")) { out.scan_k = get_int(s["k"], "analysis.scan.k"); }
    if (s.contains("t_budget")) { out.scan_t_budget = get_positive(s["t_budget"], "analysis.scan.t_budget"); }
    if (s.contains("tol")) { out.scan_tol = get_positive(s["tol"], "analysis.scan.tol"); }
    if (out.scan_k < 1) { throw ValidationError("analysis.scan.k", "must be at least 1"); }
  }
  for (std::size_t k = 0; k < out.radii.size(); ++k) {
    if (!(out.radii[k] > 0.0) || (k > 0 && !(out.radii[k] < out.radii[k - 1]))) {
      throw ValidationError("analysis.radii", "radii must be positive and strictly decreasing");
    }
    if (out.radii[k] > out.segment_length) {
      throw ValidationError("analysis.radii", "radius exceeds the segment length");
    }
  }
}

void parse_form_analysis(json const &a, FormAnalysis &out)
{
  check_keys(a, "analysis", {"truncation", "slice"});
  if (a.contains("truncation")) { out.integral_truncation = get_int(a["truncation"], "analysis.truncation"); }
  if (a.contains("slice")) {
    json const &s = a["slice"];
    check_keys(s, "analysis.slice", {"radii", "angles", "check_tol"});
    if (s.contains("radii")) { out.slice.radii = get_doubles(s["radii"], "analysis.slice.radii"); }
    if (s.contains("angles")) { out.slice.angles = get_int(s["angles"], "analysis.slice.angles"); }
    if (s.contains("check_tol")) { out.slice.check_tol = get_positive(s["check_tol"], "analysis.slice.check_tol"); }
    if (out.slice.angles < 1) { throw ValidationError("analysis.slice.angles", "must be at least 1"); }
  }
}

void parse_germ_analysis(json const &a, GermAnalysis &out)
{
  check_keys(a, "analysis", {"k_max", "orbit_seeds", "orbit_steps", "escape_radius", "orbit_tol"});
  if (a.contains("k_max")) { out.k_max = get_int(a["k_max"], "analysis.k_max"); }
  if (a.contains("orbit_steps")) { out.orbit_steps = get_int(a["orbit_steps"], "analysis.orbit_steps"); }
  if (a.contains("escape_radius")) { out.escape_radius = get_positive(a["escape_radius"], "analysis.escape_radius"); }
  if (a.contains("orbit_tol")) { out.orbit_tol = get_positive(a["orbit_tol"], "analysis.orbit_tol"); }
  if (a.contains("orbit_seeds")) {
    json const &seeds = a["orbit_seeds"];
    if (!seeds.is_array()) { throw ParseError("analysis.orbit_seeds", "expected a list of [re, im]"); }
    out.orbit_seeds.clear();
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      Point const p = get_point(seeds[k], "analysis.orbit_seeds[" + std::to_string(k) + "]");
      out.orbit_seeds.emplace_back(p.x(), p.y());
    }
  }
  if (out.k_max < 1) { throw ValidationError("analysis.k_max", "must be at least 1"); }
  if (out.orbit_steps < 1) { throw ValidationError("analysis.orbit_steps", "must be at least 1"); }
  for (auto const &z : out.orbit_seeds) {
    if (!(std::abs(z) < out.escape_radius)) {
      throw ValidationError("analysis.orbit_seeds", "seed outside the escape radius");
    }
  }
}

void parse_germ(json const &doc, ProblemSpec &spec)
{
  if (!doc.contains("coeffs")) { throw ValidationError("coeffs", "missing"); }
  json const &coeffs = doc["coeffs"];
  if (!coeffs.is_array()) { throw ParseError("coeffs", "expected a list of [degree, coefficient]"); }
  std::vector<Coefficient> exact(std::size_t(spec.truncation));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    std::string const at = "coeffs[" + std::to_string(k) + "]";
    json const &term = coeffs[k];
    if (!term.is_array() || term.size() != 2) { throw ParseError(at, "expected [degree, coefficient]"); }
    int const degree = get_int(term[0], at + "[0]");
    if (degree < 1) { throw ValidationError(at, "degree must be at least 1 (germs fix the origin)"); }
    if (degree > spec.truncation) { throw ValidationError(at, "degree exceeds truncation"); }
    exact[std::size_t(degree - 1)] += get_coefficient(term[1], at + "[1]");
  }
  if (doc.contains("multiplier_root")) {
    json const &root = doc["multiplier_root"];
    if (!root.is_array() || root.size() != 2) { throw ParseError("multiplier_root", "expected [p, q]"); }
    int const p = get_int(root[0], "multiplier_root[0]");
    int const q = get_int(root[1], "multiplier_root[1]");
    if (q < 1) { throw ValidationError("multiplier_root", "q must be at least 1"); }
    if (!exact[0].is_zero()) { throw ValidationError("coeffs", "degree 1 is fixed by multiplier_root"); }
    std::vector<std::complex<double>> higher;
    for (std::size_t k = 1; k < exact.size(); ++k) { higher.push_back(exact[k].to_complex()); }
    spec.numeric_germ = root_of_unity_germ(spec.truncation, p, q, higher);
    spec.multiplier_root = {p, q};
    return;
  }
  if (exact[0].is_zero()) { throw ValidationError("coeffs", "multiplier (degree 1 coefficient) must be nonzero"); }
  spec.germ = Germ1(spec.truncation, exact);
}

} // namespace

std::string to_string(ProblemKind k)
{
  switch (k) {
  case ProblemKind::RealField: return "real_field";
  case ProblemKind::ComplexForm: return "complex_form";
  case ProblemKind::Germ: return "germ";
  }
  return "?";
}

ProblemSpec parse_spec_text(std::string const &text, std::string const &origin)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (json::parse_error const &e) {
    throw ParseError(origin + ": " + line_col(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  ProblemSpec spec;
  spec.source = text;
  if (!doc.is_object()) { throw ParseError(origin, "top level must be an object"); }
  if (!doc.contains("kind")) { throw ValidationError("kind", "missing"); }
  if (!doc["kind"].is_string()) { throw ParseError("kind", "expected a string"); }
  std::string const kind = doc["kind"].get<std::string>();
  if (!doc.contains("truncation")) { throw ValidationError("truncation", "missing"); }
  spec.truncation = get_int(doc["truncation"], "truncation");
  if (spec.truncation < 1) { throw ValidationError("truncation", "must be at least 1"); }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) { throw ParseError("name", "expected a string"); }
    spec.name = doc["name"].get<std::string>();
  }
  json const analysis = doc.contains("analysis") ? doc["analysis"] : json::object();

  if (kind == "real_field") {
    check_keys(doc, origin, {"kind", "name", "truncation", "dx", "dy", "analysis"});
    spec.kind = ProblemKind::RealField;
    Poly2 const p = get_series(doc.value("dx", json::array()), "dx", spec.truncation, true);
    Poly2 const q = get_series(doc.value("dy", json::array()), "dy", spec.truncation, true);
    spec.field = VectorField2(p, q);
    parse_field_analysis(analysis, spec.field_analysis);
    if (spec.field_analysis.lyapunov_truncation
        && (*spec.field_analysis.lyapunov_truncation < 2 || *spec.field_analysis.lyapunov_truncation > spec.truncation)) {
      throw ValidationError("analysis.truncation", "must lie in [2, truncation]");
    }
  } else if (kind == "complex_form") {
    check_keys(doc, origin, {"kind", "name", "truncation", "a", "b", "analysis"});
    spec.kind = ProblemKind::ComplexForm;
    Poly2 const a = get_series(doc.value("a", json::array()), "a", spec.truncation, false);
    Poly2 const b = get_series(doc.value("b", json::array()), "b", spec.truncation, false);
    spec.form = OneForm2(a, b);
    parse_form_analysis(analysis, spec.form_analysis);
    if (spec.form_analysis.integral_truncation
        && (*spec.form_analysis.integral_truncation < 3
            || *spec.form_analysis.integral_truncation > spec.truncation + 1)) {
      throw ValidationError("analysis.truncation", "must lie in [3, truncation + 1]");
    }
  } else if (kind == "germ") {
    check_keys(doc, origin, {"kind", "name", "truncation", "coeffs", "multiplier_root", "analysis"});
    spec.kind = ProblemKind::Germ;
    parse_germ(doc, spec);
    parse_germ_analysis(analysis, spec.germ_analysis);
  } else {
    throw ValidationError("kind", "unknown kind '" + kind + "' (expected real_field, complex_form or germ)");
  }
  return spec;
}

ProblemSpec parse_spec(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw InputError("cannot read " + path); }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec_text(text.str(), path);
}

} // namespace centerkit
