#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace centerkit {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Exact Gaussian rational re + i*im. GMP keeps both parts in lowest terms with
// positive denominators.
class Coefficient
{
public:
  Coefficient() = default;
  Coefficient(long v) : re_(v) {}
  Coefficient(Rational re) : re_(std::move(re)) {}
  Coefficient(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Coefficient i() { return {Rational(0), Rational(1)}; }
  // Parses "n", "n/d", "a/b+c/d i", "a/b-c/d i", "c/d i", "i", "-i".
  static Coefficient parse(std::string_view text);

  Rational const &re() const { return re_; }
  Rational const &im() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  bool is_one() const { return im_.is_zero() && re_ == 1; }

  Coefficient conj() const { return {re_, -im_}; }
  Rational norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const;
  Coefficient inverse() const;

  Coefficient operator-() const { return {-re_, -im_}; }
  Coefficient &operator+=(Coefficient const &o);
  Coefficient &operator-=(Coefficient const &o);
  Coefficient &operator*=(Coefficient const &o);
  Coefficient &operator/=(Coefficient const &o);

  friend Coefficient operator+(Coefficient a, Coefficient const &b) { return a += b; }
  friend Coefficient operator-(Coefficient a, Coefficient const &b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, Coefficient const &b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, Coefficient const &b) { return a /= b; }
  friend bool operator==(Coefficient const &a, Coefficient const &b)
  {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Canonical text: "n/d" for reals, "a/b+c/d i" otherwise. Round-trips with parse.
  std::string to_string() const;

private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream &operator<<(std::ostream &os, Coefficient const &c);

Coefficient pow(Coefficient base, unsigned exponent);

} // namespace centerkit
