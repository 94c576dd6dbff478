#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "centerkit/coefficient.hpp"

namespace Eigen {
template <> struct NumTraits<centerkit::Coefficient> : GenericNumTraits<centerkit::Coefficient>
{
  using Real = centerkit::Coefficient;
  using NonInteger = centerkit::Coefficient;
  using Nested = centerkit::Coefficient;
  using Literal = centerkit::Coefficient;
  enum
  {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};
} // namespace Eigen

namespace centerkit {

using Matrix2c = Eigen::Matrix<Coefficient, 2, 2>;

// x^i y^j keyed as (i, j).
using Exponent = std::pair<int, int>;

// Truncated bivariate power series with exact Gaussian-rational coefficients.
//
// Terms of total degree above truncation() are unknown, never stored, and every
// binary operation truncates to the smaller operand degree. The reality flag is
// a declaration: a real series only ever holds real coefficients.
class Poly2
{
public:
  using Terms = std::map<Exponent, Coefficient>;

  explicit Poly2(int truncation = 1, bool real = true);

  static Poly2 constant(int truncation, Coefficient const &c);
  static Poly2 monomial(int truncation, int i, int j, Coefficient const &c = Coefficient(1));
  static Poly2 x(int truncation) { return monomial(truncation, 1, 0); }
  static Poly2 y(int truncation) { return monomial(truncation, 0, 1); }

  int truncation() const { return truncation_; }
  bool is_real() const { return real_; }
  Terms const &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coefficient coeff(int i, int j) const;
  // Lowest total degree carrying a term, -1 for the zero series.
  int order() const;
  int max_degree() const;

  // Construction helpers; both drop terms above the truncation degree.
  Poly2 &add(int i, int j, Coefficient const &c);
  Poly2 &set(int i, int j, Coefficient const &c);

  Poly2 homogeneous(int degree) const;
  Poly2 with_truncation(int truncation) const;
  Poly2 complexified() const;
  Poly2 conj() const;
  Poly2 dx() const;
  Poly2 dy() const;

  Poly2 operator-() const;
  Poly2 &operator+=(Poly2 const &o);
  Poly2 &operator-=(Poly2 const &o);
  Poly2 &operator*=(Coefficient const &c);

  std::string to_string() const;

private:
  int truncation_;
  bool real_;
  Terms terms_;
};

Poly2 operator+(Poly2 a, Poly2 const &b);
Poly2 operator-(Poly2 a, Poly2 const &b);
Poly2 operator*(Poly2 a, Coefficient const &c);
Poly2 operator*(Coefficient const &c, Poly2 a);
Poly2 operator*(Poly2 const &u, Poly2 const &v);
bool operator==(Poly2 const &a, Poly2 const &b);

// Product truncated at an explicit degree, for callers that know the true accuracy
// of their operands (e.g. a factor with no constant term).
Poly2 mul_to(Poly2 const &u, Poly2 const &v, int truncation);
Poly2 pow(Poly2 const &base, unsigned exponent);

// f(sx, sy). Both substitutes must vanish at the origin.
Poly2 substitute(Poly2 const &f, Poly2 const &sx, Poly2 const &sy);
// f(m (x, y)^T). Throws SingularMatrix when det(m) = 0.
Poly2 linear_change(Poly2 const &f, Matrix2c const &m);

std::complex<double> evaluate(Poly2 const &f, std::complex<double> x, std::complex<double> y);

std::ostream &operator<<(std::ostream &os, Poly2 const &p);

// X = p d/dx + q d/dy.
struct VectorField2
{
  Poly2 p;
  Poly2 q;

  VectorField2(Poly2 p_, Poly2 q_);

  int truncation() const { return p.truncation(); }
  bool is_real() const { return p.is_real(); }
  bool singular_at_origin() const { return p.coeff(0, 0).is_zero() && q.coeff(0, 0).is_zero(); }
  // Linear part as the matrix [[p_x, p_y], [q_x, q_y]] at the origin.
  Matrix2c linear_part() const;
  VectorField2 scaled(Coefficient const &c) const { return {p * c, q * c}; }
};

// omega = a dx + b dy.
struct OneForm2
{
  Poly2 a;
  Poly2 b;

  OneForm2(Poly2 a_, Poly2 b_);

  int truncation() const { return a.truncation(); }
  bool is_real() const { return a.is_real(); }
  bool singular_at_origin() const { return a.coeff(0, 0).is_zero() && b.coeff(0, 0).is_zero(); }

  static OneForm2 differential(Poly2 const &f) { return {f.dx(), f.dy()}; }
  // The form whose kernel contains the field: omega = p dy - q dx.
  static OneForm2 dual(VectorField2 const &field) { return {-field.q, field.p}; }
  // The field spanning the kernel: b d/dx - a d/dy.
  VectorField2 kernel_field() const { return {b, -a}; }
};

// X(f) = p f_x + q f_y, truncated at the degree through which it is determined
// by the known terms: min(N_X + ord grad f, N_f - 1 + ord X).
Poly2 lie_derivative(VectorField2 const &field, Poly2 const &f);

// Coefficient of dx ^ dy in df ^ omega, i.e. f_x b - f_y a.
Poly2 wedge_differential(Poly2 const &f, OneForm2 const &form);

} // namespace centerkit
