#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "centerkit/complex.hpp"
#include "centerkit/dense_poly.hpp"
#include "centerkit/errors.hpp"

namespace centerkit {

namespace {

using cd = std::complex<double>;

// Coefficients c_k of z^k for the restriction of p to the divisor, where the
// divisor coordinate is the first (axis = 0) or second (axis = 1) exponent.
std::vector<Coefficient> restrict_to_divisor(Poly2 const &p, int divisor_axis)
{
  std::vector<Coefficient> c;
  for (auto const &[e, v] : p.terms()) {
    int const along = divisor_axis == 0 ? e.second : e.first;
    int const across = divisor_axis == 0 ? e.first : e.second;
    if (across != 0) { continue; }
    if (c.size() <= std::size_t(along)) { c.resize(std::size_t(along) + 1); }
    c[std::size_t(along)] = v;
  }
  while (!c.empty() && c.back().is_zero()) { c.pop_back(); }
  return c;
}

bool all_zero(std::vector<Coefficient> const &c) { return c.empty(); }

std::vector<cd> roots(std::vector<Coefficient> const &c)
{
  std::vector<cd> out;
  if (c.empty()) { return out; }
  std::size_t lead = 0;
  while (lead < c.size() && c[lead].is_zero()) {
    out.emplace_back(0.0, 0.0);
    ++lead;
  }
  std::size_t const degree = c.size() - 1 - lead;
  if (degree == 0) { return out; }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(Eigen::Index(degree), Eigen::Index(degree));
  cd const top = c.back().to_complex();
  for (std::size_t k = 0; k < degree; ++k) {
    companion(0, Eigen::Index(k)) = -c[c.size() - 2 - k].to_complex() / top;
    if (k + 1 < degree) { companion(Eigen::Index(k + 1), Eigen::Index(k)) = 1.0; }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) { out.push_back(solver.eigenvalues()(k)); }
  return out;
}

cd horner(std::vector<Coefficient> const &c, cd z)
{
  cd acc(0.0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) { acc = acc * z + it->to_complex(); }
  return acc;
}

std::vector<cd> dedupe(std::vector<cd> v)
{
  std::vector<cd> out;
  for (cd z : v) {
    if (std::none_of(out.begin(), out.end(), [&](cd w) { return std::abs(w - z) <= 1e-8 * (1.0 + std::abs(z)); })) {
      out.push_back(z);
    }
  }
  return out;
}

int min_power(Poly2 const &p, int axis)
{
  int best = -1;
  for (auto const &[e, v] : p.terms()) {
    int const k = axis == 0 ? e.first : e.second;
    if (best < 0 || k < best) { best = k; }
  }
  return best;
}

Poly2 divide_power(Poly2 const &p, int axis, int power)
{
  Poly2 out(p.truncation() - power, p.is_real());
  for (auto const &[e, v] : p.terms()) {
    if (axis == 0) {
      out.add(e.first - power, e.second, v);
    } else {
      out.add(e.first, e.second - power, v);
    }
  }
  return out;
}

struct ChartAnalysis
{
  OneForm2 form;
  int multiplicity = 0;
  bool invariant = true;
  std::vector<DivisorSingularity> singular;
};

// form = a d(first) + b d(second) in chart coordinates; the divisor is
// {first = 0} when divisor_axis == 0, else {second = 0}.
ChartAnalysis analyze_chart(Poly2 a, Poly2 b, int divisor_axis, std::string const &label)
{
  int const pa = a.is_zero() ? -1 : min_power(a, divisor_axis);
  int const pb = b.is_zero() ? -1 : min_power(b, divisor_axis);
  int const power = pa < 0 ? pb : (pb < 0 ? pa : std::min(pa, pb));
  ChartAnalysis out{OneForm2(divide_power(a, divisor_axis, power), divide_power(b, divisor_axis, power)), power,
                    true, {}};
  Poly2 const &ca = out.form.a;
  Poly2 const &cb = out.form.b;
  // Coefficient of the differential along the divisor.
  Poly2 const &along = divisor_axis == 0 ? cb : ca;
  Poly2 const &across = divisor_axis == 0 ? ca : cb;
  auto const along_e = restrict_to_divisor(along, divisor_axis);
  auto const across_e = restrict_to_divisor(across, divisor_axis);
  out.invariant = all_zero(along_e);

  std::vector<cd> candidates;
  if (out.invariant) {
    candidates = roots(across_e);
  } else {
    for (cd z : roots(along_e)) {
      if (std::abs(horner(across_e, z)) <= 1e-9 * (1.0 + std::abs(z))) { candidates.push_back(z); }
    }
  }

  ComplexPoly const da = ComplexPoly::from(ca);
  ComplexPoly const db = ComplexPoly::from(cb);
  for (cd z : dedupe(candidates)) {
    cd const first = divisor_axis == 0 ? cd(0.0) : z;
    cd const second = divisor_axis == 0 ? z : cd(0.0);
    // Kernel field: d(first)/dt = b, d(second)/dt = -a.
    Eigen::Matrix2cd j;
    j << db.dx()(first, second), db.dy()(first, second), -da.dx()(first, second), -da.dy()(first, second);
    DivisorSingularity s;
    s.chart = label;
    s.location = z;
    if (divisor_axis == 0) {
      s.lambda_transverse = j(0, 0);
      s.lambda_tangent = j(1, 1);
    } else {
      s.lambda_transverse = j(1, 1);
      s.lambda_tangent = j(0, 0);
    }
    s.ratio = std::abs(s.lambda_tangent) > 0.0 ? s.lambda_transverse / s.lambda_tangent : cd(NAN, NAN);
    out.singular.push_back(s);
  }
  return out;
}

void check_isolated(OneForm2 const &form)
{
  if (form.a.is_zero() && form.b.is_zero()) { throw NotIsolated("1-form vanishes identically"); }
  for (int axis = 0; axis < 2; ++axis) {
    int const pa = form.a.is_zero() ? 1 << 20 : min_power(form.a, axis);
    int const pb = form.b.is_zero() ? 1 << 20 : min_power(form.b, axis);
    if (std::min(pa, pb) > 0) {
      throw NotIsolated(std::string("coefficients share the factor ") + (axis == 0 ? "x" : "y"));
    }
  }
}

} // namespace

BlowupResult blowup(OneForm2 const &form)
{
  if (!form.singular_at_origin()) { throw PreconditionViolation("blowup: form does not vanish at the origin"); }
  check_isolated(form);
  int const n = form.truncation();

  // Chart t: y = t x, dy = t dx + x dt; coordinates (x, t).
  Poly2 const x = Poly2::x(n);
  Poly2 const t = Poly2::y(n);
  Poly2 const xt = x * t;
  Poly2 const a_t = substitute(form.a, x, xt);
  Poly2 const b_t = substitute(form.b, x, xt);
  ChartAnalysis chart_t = analyze_chart(a_t + t * b_t, x * b_t, 0, "t");

  // Chart s: x = s y, dx = s dy + y ds; coordinates (s, y).
  Poly2 const s = Poly2::x(n);
  Poly2 const y = Poly2::y(n);
  Poly2 const sy = s * y;
  Poly2 const a_s = substitute(form.a, sy, y);
  Poly2 const b_s = substitute(form.b, sy, y);
  ChartAnalysis chart_s = analyze_chart(y * a_s, s * a_s + b_s, 1, "s");

  BlowupResult out{chart_t.form, chart_s.form, chart_t.multiplicity, chart_s.multiplicity,
                   chart_t.invariant && chart_s.invariant, true, {}};
  if (chart_t.invariant != chart_s.invariant) { out.gluing_consistent = false; }

  // Chart t covers every divisor point except s = 0; points s != 0 are t = 1/s.
  out.singularities_on_E = chart_t.singular;
  for (auto const &sing : chart_s.singular) {
    if (std::abs(sing.location) <= 1e-12) {
      out.singularities_on_E.push_back(sing);
      continue;
    }
    cd const t_loc = 1.0 / sing.location;
    bool const seen = std::any_of(chart_t.singular.begin(), chart_t.singular.end(), [&](DivisorSingularity const &d) {
      return std::abs(d.location - t_loc) <= 1e-7 * (1.0 + std::abs(t_loc));
    });
    if (!seen) { out.gluing_consistent = false; }
  }
  for (auto const &sing : chart_t.singular) {
    if (std::abs(sing.location) <= 1e-12) { continue; }
    cd const s_loc = 1.0 / sing.location;
    bool const seen = std::any_of(chart_s.singular.begin(), chart_s.singular.end(), [&](DivisorSingularity const &d) {
      return std::abs(d.location - s_loc) <= 1e-7 * (1.0 + std::abs(s_loc));
    });
    if (!seen) { out.gluing_consistent = false; }
  }
  return out;
}

} // namespace centerkit
