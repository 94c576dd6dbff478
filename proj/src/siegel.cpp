#include <algorithm>

#include "centerkit/complex.hpp"

#include "centerkit/errors.hpp"

namespace centerkit {

namespace {

Matrix2c identity2()
{
  Matrix2c m;
  m << Coefficient(1), Coefficient(0), Coefficient(0), Coefficient(1);
  return m;
}

} // namespace

bool siegel_check(OneForm2 const &form)
{
  if (!form.singular_at_origin()) { return false; }
  Poly2 const a1 = form.a.homogeneous(1);
  Poly2 const b1 = form.b.homogeneous(1);
  return a1.terms().size() == 1 && a1.coeff(0, 1).is_one() && b1.terms().size() == 1 && b1.coeff(1, 0).is_one();
}

SiegelForm complexify(RotationNormalization const &norm)
{
  VectorField2 const &field = norm.normalized;
  Coefficient const half(Rational(1, 2));
  Coefficient const i = Coefficient::i();
  // (x, y) = change (u, v) with x = (u + v)/2, y = (u - v)/(2i).
  Matrix2c change;
  change << half, half, -i * half, i * half;

  Poly2 const p = linear_change(field.p.complexified(), change);
  Poly2 const q = linear_change(field.q.complexified(), change);
  Poly2 const u_dot = p + q * i;   // iu + ...
  Poly2 const v_dot = p - q * i;   // -iv + ...
  // omega = u_dot dv - v_dot du, divided by i.
  OneForm2 form(v_dot * i, u_dot * (-i));
  SiegelForm out{std::move(form), change};
  if (!siegel_check(out.form)) { throw std::logic_error("complexify did not produce a Siegel linear part"); }
  return out;
}

SiegelForm siegel_form(OneForm2 const &form)
{
  if (!siegel_check(form)) { throw PreconditionViolation("form does not have linear part x dy + y dx"); }
  return {form, identity2()};
}

Poly2 complexify_function(SiegelForm const &siegel, Poly2 const &real_function)
{
  return linear_change(real_function.complexified(), siegel.change);
}

MatrixXc siegel_operator_matrix(int degree)
{
  OneForm2 const linear(Poly2::y(degree + 1), Poly2::x(degree + 1));
  return operator_matrix(degree, degree, [&](Poly2 const &m) { return wedge_differential(m, linear); });
}

SiegelIntegral formal_first_integral_siegel(SiegelForm const &siegel, int truncation)
{
  if (!siegel_check(siegel.form)) { throw PreconditionViolation("formal_first_integral_siegel needs a Siegel form"); }
  // Degree k of dF ^ omega only involves omega through degree k - 1.
  if (truncation > siegel.form.truncation() + 1) {
    throw std::invalid_argument("formal_first_integral_siegel: truncation exceeds the form's truncation + 1");
  }
  int const n = truncation;
  int const kept = std::min(n, siegel.form.truncation());
  OneForm2 const form(siegel.form.a.with_truncation(kept), siegel.form.b.with_truncation(kept));

  SiegelIntegral out{Poly2::monomial(n, 1, 1), {}, std::nullopt};
  out.first_integral = out.first_integral.complexified();
  for (int k = 3; k <= n; ++k) {
    Poly2 const residual = wedge_differential(out.first_integral, form).homogeneous(k);
    Coefficient obstruction;
    Poly2 correction(n, false);
    for (auto const &[e, c] : residual.terms()) {
      int const shift = e.first - e.second;
      if (shift == 0) {
        obstruction = c;
        continue;
      }
      // (i - j) F_ij = -R_ij
      correction.add(e.first, e.second, -c / Coefficient(shift));
    }
    if (k % 2 == 0) {
      out.obstructions.push_back({k / 2, obstruction});
      if (!obstruction.is_zero() && !out.first_nonzero) { out.first_nonzero = k / 2; }
    }
    out.first_integral += correction;
  }
  return out;
}

} // namespace centerkit
