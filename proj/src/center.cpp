#include "centerkit/center.hpp"

#include <boost/multiprecision/integer.hpp>

#include "centerkit/errors.hpp"

namespace centerkit {

namespace {

Matrix2c inverse(Matrix2c const &m)
{
  Coefficient const det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det.is_zero()) { throw SingularMatrix("singular 2x2 matrix"); }
  Matrix2c inv;
  inv << m(1, 1) / det, -m(0, 1) / det, -m(1, 0) / det, m(0, 0) / det;
  return inv;
}

std::optional<BigInt> exact_isqrt(BigInt const &n)
{
  if (n < 0) { return std::nullopt; }
  BigInt const s = boost::multiprecision::sqrt(n);
  if (s * s != n) { return std::nullopt; }
  return s;
}

std::optional<Rational> exact_sqrt(Rational const &q)
{
  auto const num = exact_isqrt(boost::multiprecision::numerator(q));
  auto const den = exact_isqrt(boost::multiprecision::denominator(q));
  if (!num || !den) { return std::nullopt; }
  return Rational(*num, *den);
}

// z = x + i y, w = x - i y. The rotation operator acts diagonally on z^a w^b
// with eigenvalue i (a - b).
Matrix2c from_rotating_basis()
{
  // (x, y) in terms of (z, w).
  Matrix2c m;
  m << Coefficient(Rational(1, 2)), Coefficient(Rational(1, 2)), Coefficient(Rational(0), Rational(-1, 2)),
    Coefficient(Rational(0), Rational(1, 2));
  return m;
}

Matrix2c to_rotating_basis()
{
  // (z, w) in terms of (x, y).
  Matrix2c m;
  m << Coefficient(1), Coefficient::i(), Coefficient(1), -Coefficient::i();
  return m;
}

Poly2 real_part(Poly2 const &p)
{
  Poly2 out(p.truncation());
  for (auto const &[e, c] : p.terms()) {
    if (!c.is_real()) { throw std::logic_error("homological solve produced a non-real coefficient"); }
    out.add(e.first, e.second, c);
  }
  return out;
}

} // namespace

Poly2 RotationNormalization::to_original(Poly2 const &f) const { return linear_change(f, inverse(change_matrix)); }

RotationNormalization normalize_rotation(VectorField2 const &field)
{
  if (!field.singular_at_origin()) { throw NotARotation("field does not vanish at the origin"); }
  if (!field.is_real()) { throw NotARotation("rotation normalization needs a real field"); }
  Matrix2c const a = field.linear_part();
  Coefficient const trace = a(0, 0) + a(1, 1);
  Coefficient const det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (!trace.is_zero()) { throw NotARotation("linear part has nonzero trace " + trace.to_string()); }
  if (det.re() <= 0) { throw NotARotation("linear part has determinant " + det.to_string() + " <= 0"); }
  auto const omega = exact_sqrt(det.re());
  if (!omega) {
    throw IrrationalFrequency("frequency sqrt(" + det.to_string() + ") is irrational; rescale the field first");
  }

  // Columns e1 and A e1 / omega satisfy A M = omega M J.
  Coefficient const w(*omega);
  Matrix2c m;
  m << Coefficient(1), a(0, 0) / w, Coefficient(0), a(1, 0) / w;
  Matrix2c const minv = inverse(m);

  Poly2 const p = linear_change(field.p, m);
  Poly2 const q = linear_change(field.q, m);
  Coefficient const s = w.inverse();
  Poly2 const pn = (p * minv(0, 0) + q * minv(0, 1)) * s;
  Poly2 const qn = (p * minv(1, 0) + q * minv(1, 1)) * s;
  VectorField2 normalized(pn, qn);

  Matrix2c const lin = normalized.linear_part();
  if (!lin(0, 0).is_zero() || !lin(1, 1).is_zero() || !(lin(1, 0) == Coefficient(1))
      || !(lin(0, 1) == Coefficient(-1))) {
    throw std::logic_error("rotation normalization failed to reach the standard linear part");
  }
  return {field, m, s, std::move(normalized)};
}

Obstruction const *LyapunovReport::first_nonzero_obstruction() const
{
  if (!first_nonzero) { return nullptr; }
  for (auto const &o : obstructions) {
    if (o.index == *first_nonzero) { return &o; }
  }
  return nullptr;
}

MatrixXc rotation_operator_matrix(int degree)
{
  Poly2 const minus_y = Poly2::monomial(degree + 1, 0, 1, Coefficient(-1));
  Poly2 const x = Poly2::x(degree + 1);
  VectorField2 const rotation(minus_y, x);
  return operator_matrix(degree, degree, [&](Poly2 const &m) { return lie_derivative(rotation, m); });
}

LyapunovReport lyapunov_quantities(RotationNormalization const &norm, int truncation)
{
  if (truncation < 2) { throw std::invalid_argument("lyapunov_quantities: truncation must be at least 2"); }
  if (truncation > norm.normalized.truncation()) {
    throw std::invalid_argument("lyapunov_quantities: truncation " + std::to_string(truncation)
                                + " exceeds the field's truncation " + std::to_string(norm.normalized.truncation()));
  }
  int const n = truncation;
  VectorField2 const field(norm.normalized.p.with_truncation(n), norm.normalized.q.with_truncation(n));
  Matrix2c const to_zw = from_rotating_basis();
  Matrix2c const to_xy = to_rotating_basis();

  Poly2 first_integral(n);
  first_integral.add(2, 0, Coefficient(1)).add(0, 2, Coefficient(1));
  LyapunovReport report{n, first_integral, {}, std::nullopt};

  for (int k = 3; k <= n; ++k) {
    Poly2 const residual = lie_derivative(field, report.first_integral).homogeneous(k);
    Poly2 const rz = linear_change(residual.complexified(), to_zw);
    Poly2 correction(n, false);
    Coefficient eta;
    for (auto const &[e, c] : rz.terms()) {
      int const shift = e.first - e.second;
      if (shift == 0) {
        eta = c;
        continue;
      }
      // i (a - b) F_ab = -R_ab
      correction.add(e.first, e.second, -c / Coefficient(Rational(0), Rational(shift)));
    }
    if (k % 2 == 0) {
      if (!eta.is_real()) { throw std::logic_error("non-real obstruction for a real field"); }
      report.obstructions.push_back({k / 2, eta});
      if (!eta.is_zero() && !report.first_nonzero) { report.first_nonzero = k / 2; }
    }
    report.first_integral += real_part(linear_change(correction, to_xy));
  }
  return report;
}

MorseReport morse_check(Poly2 const &f)
{
  Coefficient const a = f.coeff(2, 0);
  Coefficient const b = f.coeff(1, 1);
  Coefficient const c = f.coeff(0, 2);
  // Hessian [[2a, b], [b, 2c]].
  Coefficient const det = Coefficient(4) * a * c - b * b;
  MorseReport r;
  r.nondegenerate = !det.is_zero();
  r.definite = r.nondegenerate && det.is_real() && a.is_real() && c.is_real() && det.re() > 0;
  return r;
}

std::string to_string(CenterVerdict v)
{
  switch (v) {
  case CenterVerdict::CenterToOrderN: return "CENTER_TO_ORDER_N";
  case CenterVerdict::Focus: return "FOCUS";
  case CenterVerdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

CenterCertificate certify_center(VectorField2 const &field, int truncation)
{
  CenterCertificate cert;
  cert.truncation = truncation;
  try {
    cert.normalization = normalize_rotation(field);
  } catch (NotARotation const &e) {
    cert.reason = e.what();
    return cert;
  } catch (IrrationalFrequency const &e) {
    cert.reason = e.what();
    return cert;
  }
  cert.report = lyapunov_quantities(*cert.normalization, truncation);
  cert.morse = morse_check(cert.report->first_integral);
  cert.first_integral_original = cert.normalization->to_original(cert.report->first_integral);
  if (auto const *o = cert.report->first_nonzero_obstruction()) {
    cert.verdict = CenterVerdict::Focus;
    cert.focus = *o;
    cert.focus_sign = o->value.re() > 0 ? 1 : -1;
    cert.reason = "first nonzero obstruction at degree " + std::to_string(o->degree());
  } else if (cert.morse.definite) {
    cert.verdict = CenterVerdict::CenterToOrderN;
    cert.reason = "all obstructions vanish up to degree " + std::to_string(truncation);
  } else {
    cert.reason = "first integral is not of definite Morse type";
  }
  return cert;
}

} // namespace centerkit
