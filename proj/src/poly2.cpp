#include "centerkit/poly2.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "centerkit/dense_poly.hpp"
#include "centerkit/errors.hpp"

namespace centerkit {

Poly2::Poly2(int truncation, bool real)
  : truncation_(truncation)
  , real_(real)
{
  if (truncation < 0) { throw std::invalid_argument("Poly2: negative truncation degree"); }
}

Poly2 Poly2::constant(int truncation, Coefficient const &c)
{
  Poly2 p(truncation, c.is_real());
  p.add(0, 0, c);
  return p;
}

Poly2 Poly2::monomial(int truncation, int i, int j, Coefficient const &c)
{
  Poly2 p(truncation, c.is_real());
  p.add(i, j, c);
  return p;
}

Coefficient Poly2::coeff(int i, int j) const
{
  auto const it = terms_.find({i, j});
  return it == terms_.end() ? Coefficient() : it->second;
}

int Poly2::order() const
{
  int best = -1;
  for (auto const &[e, c] : terms_) {
    int const d = e.first + e.second;
    if (best < 0 || d < best) { best = d; }
  }
  return best;
}

int Poly2::max_degree() const
{
  int best = -1;
  for (auto const &[e, c] : terms_) { best = std::max(best, e.first + e.second); }
  return best;
}

Poly2 &Poly2::add(int i, int j, Coefficient const &c)
{
  if (i < 0 || j < 0) { throw std::invalid_argument("Poly2: negative exponent"); }
  if (i + j > truncation_ || c.is_zero()) { return *this; }
  if (!c.is_real()) { real_ = false; }
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) { terms_.erase(it); }
  }
  return *this;
}

Poly2 &Poly2::set(int i, int j, Coefficient const &c)
{
  terms_.erase({i, j});
  return add(i, j, c);
}

Poly2 Poly2::homogeneous(int degree) const
{
  Poly2 out(truncation_, real_);
  for (auto const &[e, c] : terms_) {
    if (e.first + e.second == degree) { out.terms_.emplace(e, c); }
  }
  return out;
}

Poly2 Poly2::with_truncation(int truncation) const
{
  Poly2 out(truncation, real_);
  for (auto const &[e, c] : terms_) {
    if (e.first + e.second <= truncation) { out.terms_.emplace(e, c); }
  }
  return out;
}

Poly2 Poly2::complexified() const
{
  Poly2 out = *this;
  out.real_ = false;
  return out;
}

Poly2 Poly2::conj() const
{
  Poly2 out(truncation_, real_);
  for (auto const &[e, c] : terms_) { out.terms_.emplace(e, c.conj()); }
  return out;
}

Poly2 Poly2::dx() const
{
  Poly2 out(std::max(truncation_ - 1, 0), real_);
  for (auto const &[e, c] : terms_) {
    if (e.first > 0) { out.add(e.first - 1, e.second, c * Coefficient(e.first)); }
  }
  return out;
}

Poly2 Poly2::dy() const
{
  Poly2 out(std::max(truncation_ - 1, 0), real_);
  for (auto const &[e, c] : terms_) {
    if (e.second > 0) { out.add(e.first, e.second - 1, c * Coefficient(e.second)); }
  }
  return out;
}

Poly2 Poly2::operator-() const
{
  Poly2 out(truncation_, real_);
  for (auto const &[e, c] : terms_) { out.terms_.emplace(e, -c); }
  return out;
}

Poly2 &Poly2::operator+=(Poly2 const &o)
{
  if (o.truncation_ < truncation_) { *this = with_truncation(o.truncation_); }
  real_ = real_ && o.real_;
  for (auto const &[e, c] : o.terms_) { add(e.first, e.second, c); }
  return *this;
}

Poly2 &Poly2::operator-=(Poly2 const &o) { return *this += -o; }

Poly2 &Poly2::operator*=(Coefficient const &c)
{
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  real_ = real_ && c.is_real();
  for (auto &[e, v] : terms_) { v *= c; }
  return *this;
}

std::string Poly2::to_string() const
{
  if (terms_.empty()) { return "0"; }
  std::ostringstream os;
  bool first = true;
  // Graded order: by total degree, then descending power of x.
  std::vector<std::pair<Exponent, Coefficient>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](auto const &l, auto const &r) {
    int const dl = l.first.first + l.first.second;
    int const dr = r.first.first + r.first.second;
    return dl != dr ? dl < dr : l.first.first > r.first.first;
  });
  for (auto const &[e, c] : sorted) {
    if (!first) { os << " + "; }
    first = false;
    bool const bare = e.first + e.second > 0;
    if (!(bare && c.is_one())) { os << (c.is_real() ? c.to_string() : "(" + c.to_string() + ")"); }
    if (bare && !c.is_one()) { os << "*"; }
    if (e.first > 0) { os << "x" << (e.first > 1 ? "^" + std::to_string(e.first) : ""); }
    if (e.first > 0 && e.second > 0) { os << "*"; }
    if (e.second > 0) { os << "y" << (e.second > 1 ? "^" + std::to_string(e.second) : ""); }
  }
  os << " + O(" << truncation_ + 1 << ")";
  return os.str();
}

std::ostream &operator<<(std::ostream &os, Poly2 const &p) { return os << p.to_string(); }

Poly2 operator+(Poly2 a, Poly2 const &b) { return a += b; }
Poly2 operator-(Poly2 a, Poly2 const &b) { return a -= b; }
Poly2 operator*(Poly2 a, Coefficient const &c) { return a *= c; }
Poly2 operator*(Coefficient const &c, Poly2 a) { return a *= c; }

Poly2 mul_to(Poly2 const &u, Poly2 const &v, int truncation)
{
  Poly2 out(truncation, u.is_real() && v.is_real());
  for (auto const &[eu, cu] : u.terms()) {
    int const du = eu.first + eu.second;
    if (du > truncation) { continue; }
    for (auto const &[ev, cv] : v.terms()) {
      if (du + ev.first + ev.second > truncation) { continue; }
      out.add(eu.first + ev.first, eu.second + ev.second, cu * cv);
    }
  }
  return out;
}

Poly2 operator*(Poly2 const &u, Poly2 const &v) { return mul_to(u, v, std::min(u.truncation(), v.truncation())); }

bool operator==(Poly2 const &a, Poly2 const &b)
{
  return a.truncation() == b.truncation() && a.terms() == b.terms();
}

Poly2 pow(Poly2 const &base, unsigned exponent)
{
  Poly2 result = Poly2::constant(base.truncation(), Coefficient(1));
  for (unsigned k = 0; k < exponent; ++k) { result = result * base; }
  return result;
}

Poly2 substitute(Poly2 const &f, Poly2 const &sx, Poly2 const &sy)
{
  if (!sx.coeff(0, 0).is_zero() || !sy.coeff(0, 0).is_zero()) {
    throw std::invalid_argument("substitute: substitutes must vanish at the origin");
  }
  int const n = std::min({f.truncation(), sx.truncation(), sy.truncation()});
  int const top = std::max(f.max_degree(), 0);
  std::vector<Poly2> xp{Poly2::constant(n, Coefficient(1))};
  std::vector<Poly2> yp{Poly2::constant(n, Coefficient(1))};
  for (int k = 1; k <= std::min(top, n); ++k) {
    xp.push_back(xp.back() * sx.with_truncation(n));
    yp.push_back(yp.back() * sy.with_truncation(n));
  }
  Poly2 out(n, f.is_real() && sx.is_real() && sy.is_real());
  for (auto const &[e, c] : f.terms()) {
    if (e.first + e.second > n) { continue; }
    out += c * mul_to(xp[e.first], yp[e.second], n);
  }
  return out;
}

Poly2 linear_change(Poly2 const &f, Matrix2c const &m)
{
  Coefficient const det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det.is_zero()) { throw SingularMatrix("linear_change: singular substitution matrix"); }
  int const n = f.truncation();
  Poly2 sx(n), sy(n);
  sx.add(1, 0, m(0, 0)).add(0, 1, m(0, 1));
  sy.add(1, 0, m(1, 0)).add(0, 1, m(1, 1));
  return substitute(f, sx, sy);
}

std::complex<double> evaluate(Poly2 const &f, std::complex<double> x, std::complex<double> y)
{
  return DensePoly2<std::complex<double>>::from(f)(x, y);
}

VectorField2::VectorField2(Poly2 p_, Poly2 q_)
  : p(std::move(p_))
  , q(std::move(q_))
{
  int const n = std::min(p.truncation(), q.truncation());
  if (p.truncation() != n) { p = p.with_truncation(n); }
  if (q.truncation() != n) { q = q.with_truncation(n); }
  if (p.is_real() != q.is_real()) {
    p = p.complexified();
    q = q.complexified();
  }
}

Matrix2c VectorField2::linear_part() const
{
  Matrix2c m;
  m << p.coeff(1, 0), p.coeff(0, 1), q.coeff(1, 0), q.coeff(0, 1);
  return m;
}

OneForm2::OneForm2(Poly2 a_, Poly2 b_)
  : a(std::move(a_))
  , b(std::move(b_))
{
  int const n = std::min(a.truncation(), b.truncation());
  if (a.truncation() != n) { a = a.with_truncation(n); }
  if (b.truncation() != n) { b = b.with_truncation(n); }
  if (a.is_real() != b.is_real()) {
    a = a.complexified();
    b = b.complexified();
  }
}

Poly2 lie_derivative(VectorField2 const &field, Poly2 const &f)
{
  // u v with u = u_known + O(N_u + 1) is exact through min(ord u + N_v, ord v + N_u).
  constexpr int unbounded = 1 << 20;
  auto order_of = [](Poly2 const &p) { return p.is_zero() ? unbounded : p.order(); };
  int const field_order = std::min(order_of(field.p), order_of(field.q));
  Poly2 const fx = f.dx();
  Poly2 const fy = f.dy();
  int const grad_order = std::min(order_of(fx), order_of(fy));
  int const n = std::min({field.truncation() + grad_order, f.truncation() - 1 + field_order,
                          field.truncation() + f.truncation()});
  Poly2 out = mul_to(field.p, fx, n);
  out += mul_to(field.q, fy, n);
  if (field.is_real() && f.is_real()) { return out; }
  return out.complexified();
}

Poly2 wedge_differential(Poly2 const &f, OneForm2 const &form) { return lie_derivative(form.kernel_field(), f); }

} // namespace centerkit
