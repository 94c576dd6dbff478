#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "centerkit/coefficient.hpp"
#include "centerkit/errors.hpp"

namespace centerkit {

namespace detail {

template <typename Scalar> bool scalar_is_zero(Scalar const &s)
{
  if constexpr (std::is_same_v<Scalar, Coefficient>) {
    return s.is_zero();
  } else {
    return s == Scalar(0);
  }
}

template <typename Scalar> std::complex<double> scalar_to_complex(Scalar const &s)
{
  if constexpr (std::is_same_v<Scalar, Coefficient>) {
    return s.to_complex();
  } else {
    return std::complex<double>(s);
  }
}

} // namespace detail

// Truncated germ z -> c_1 z + c_2 z^2 + ... + c_N z^N of a diffeomorphism of
// (C, 0). Exact for Scalar = Coefficient; floating for std::complex<double>,
// which covers multipliers exp(2 pi i p/q) that are not Gaussian rationals.
template <typename Scalar> class BasicGerm
{
public:
  // coeffs[k] is the coefficient of z^(k+1).
  BasicGerm(int truncation, std::vector<Scalar> coeffs)
    : truncation_(truncation)
    , c_(std::size_t(truncation), Scalar(0))
  {
    if (truncation < 1) { throw std::invalid_argument("germ truncation must be at least 1"); }
    for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) { c_[k] = coeffs[k]; }
    if (detail::scalar_is_zero(c_[0])) { throw std::invalid_argument("germ multiplier must be nonzero"); }
  }

  static BasicGerm identity(int truncation) { return BasicGerm(truncation, {Scalar(1)}); }
  static BasicGerm linear(int truncation, Scalar multiplier) { return BasicGerm(truncation, {multiplier}); }

  int truncation() const { return truncation_; }
  Scalar const &multiplier() const { return c_[0]; }
  // Coefficient of z^degree, zero outside 1..N.
  Scalar coeff(int degree) const
  {
    return degree >= 1 && degree <= truncation_ ? c_[std::size_t(degree - 1)] : Scalar(0);
  }
  std::vector<Scalar> const &coeffs() const { return c_; }

  bool is_identity(double tol = 0.0) const
  {
    for (int k = 1; k <= truncation_; ++k) {
      Scalar const expected = k == 1 ? Scalar(1) : Scalar(0);
      if constexpr (std::is_same_v<Scalar, Coefficient>) {
        if (!(coeff(k) == expected)) { return false; }
      } else {
        if (std::abs(coeff(k) - expected) > tol) { return false; }
      }
    }
    return true;
  }

  std::complex<double> operator()(std::complex<double> z) const
  {
    std::complex<double> acc(0.0);
    for (int k = truncation_; k >= 1; --k) { acc = (acc + detail::scalar_to_complex(coeff(k))) * z; }
    return acc;
  }

  friend bool operator==(BasicGerm const &a, BasicGerm const &b)
  {
    return a.truncation_ == b.truncation_ && a.c_ == b.c_;
  }

private:
  int truncation_;
  std::vector<Scalar> c_;
};

using Germ1 = BasicGerm<Coefficient>;
using NumericGerm = BasicGerm<std::complex<double>>;

namespace detail {

// Series without constant term, index k holds z^(k+1); truncated product.
template <typename Scalar> std::vector<Scalar> series_mul(std::vector<Scalar> const &u, std::vector<Scalar> const &v)
{
  std::size_t const n = std::min(u.size(), v.size());
  std::vector<Scalar> out(n, Scalar(0));
  // z^(a+1) z^(b+1) = z^(a+b+2) -> index a+b+1
  for (std::size_t a = 0; a < n; ++a) {
    if (scalar_is_zero(u[a])) { continue; }
    for (std::size_t b = 0; a + b + 1 < n; ++b) { out[a + b + 1] += u[a] * v[b]; }
  }
  return out;
}

} // namespace detail

// f o g, truncated at min(N_f, N_g).
template <typename Scalar> BasicGerm<Scalar> compose(BasicGerm<Scalar> const &f, BasicGerm<Scalar> const &g)
{
  int const n = std::min(f.truncation(), g.truncation());
  std::vector<Scalar> gs(g.coeffs().begin(), g.coeffs().begin() + n);
  // Horner: f(g) = g (c_1 + g (c_2 + ... ))
  std::vector<Scalar> acc(std::size_t(n), Scalar(0));
  for (int k = n; k >= 1; --k) {
    // acc <- (acc + c_k) * g, where acc + c_k is a series with constant term c_k.
    std::vector<Scalar> next = detail::series_mul(acc, gs);
    // acc * g is computed with acc shifted: acc holds z^(m+1) terms, so
    // (c_k + acc) * g = c_k g + acc * g.
    for (int m = 0; m < n; ++m) { next[std::size_t(m)] += f.coeff(k) * gs[std::size_t(m)]; }
    acc = std::move(next);
  }
  return BasicGerm<Scalar>(n, std::move(acc));
}

// Two-sided inverse to truncation.
template <typename Scalar> BasicGerm<Scalar> invert(BasicGerm<Scalar> const &f)
{
  int const n = f.truncation();
  Scalar const lambda = f.multiplier();
  std::vector<Scalar> h(std::size_t(n), Scalar(0));
  h[0] = Scalar(1) / lambda;
  for (int k = 2; k <= n; ++k) {
    // z^k coefficient of f(h) is lambda h_k + (terms in h_1..h_{k-1}).
    Scalar const partial = compose(f, BasicGerm<Scalar>(n, h)).coeff(k);
    h[std::size_t(k - 1)] = -partial / lambda;
  }
  return BasicGerm<Scalar>(n, std::move(h));
}

template <typename Scalar> BasicGerm<Scalar> iterate(BasicGerm<Scalar> const &f, int times)
{
  BasicGerm<Scalar> out = BasicGerm<Scalar>::identity(f.truncation());
  for (int k = 0; k < times; ++k) { out = compose(f, out); }
  return out;
}

// g^{-1} o f o g
template <typename Scalar> BasicGerm<Scalar> conjugate(BasicGerm<Scalar> const &f, BasicGerm<Scalar> const &g)
{
  return compose(invert(g), compose(f, g));
}

// Builds a floating germ with multiplier exp(2 pi i p / q).
inline NumericGerm root_of_unity_germ(int truncation, int p, int q, std::vector<std::complex<double>> higher = {})
{
  if (q < 1) { throw std::invalid_argument("root of unity needs q >= 1"); }
  std::vector<std::complex<double>> c{std::polar(1.0, 2.0 * std::numbers::pi * p / q)};
  c.insert(c.end(), higher.begin(), higher.end());
  return NumericGerm(truncation, std::move(c));
}

// Tolerance for identity tests on floating germs.
inline constexpr double numeric_identity_tol = 1e-9;

// Smallest m <= k_max with lambda^m = 1, if any.
template <typename Scalar> std::optional<int> multiplier_order(Scalar const &lambda, int k_max)
{
  if constexpr (std::is_same_v<Scalar, Coefficient>) {
    if (!(lambda.norm2() == 1)) { return std::nullopt; }
    Coefficient power = lambda;
    for (int m = 1; m <= k_max; ++m) {
      if (power.is_one()) { return m; }
      power *= lambda;
      // Gaussian rationals on the unit circle that are roots of unity are +-1, +-i.
      if (m >= 4) { break; }
    }
    return std::nullopt;
  } else {
    std::complex<double> power = lambda;
    for (int m = 1; m <= k_max; ++m) {
      if (std::abs(power - 1.0) <= numeric_identity_tol) { return m; }
      power *= lambda;
    }
    return std::nullopt;
  }
}

// Smallest k <= k_max with f^k = id to truncation. Absent when the multiplier is
// not a root of unity of order <= k_max, or when f^m (m its order) is tangent to
// the identity with a nonzero higher term. Throws Inconclusive when f^m is the
// identity to truncation N but N < 2m.
template <typename Scalar> std::optional<int> finite_order(BasicGerm<Scalar> const &f, int k_max)
{
  if (k_max < 1) { throw std::invalid_argument("finite_order: k_max must be at least 1"); }
  auto const m = multiplier_order(f.multiplier(), k_max);
  if (!m) { return std::nullopt; }
  BasicGerm<Scalar> const fm = iterate(f, *m);
  bool identity = false;
  if constexpr (std::is_same_v<Scalar, Coefficient>) {
    identity = fm.is_identity();
  } else {
    identity = fm.is_identity(numeric_identity_tol);
  }
  if (!identity) { return std::nullopt; }
  if (f.truncation() < 2 * *m) {
    throw Inconclusive("f^" + std::to_string(*m) + " is the identity to degree " + std::to_string(f.truncation())
                       + " but that is below 2*" + std::to_string(*m) + "; retry at higher truncation");
  }
  return m;
}

enum class OrbitStatus
{
  Periodic,
  Escaped,
  Undecided
};

inline std::string to_string(OrbitStatus s)
{
  switch (s) {
  case OrbitStatus::Periodic: return "periodic";
  case OrbitStatus::Escaped: return "escaped";
  case OrbitStatus::Undecided: return "undecided";
  }
  return "?";
}

struct PseudoOrbit
{
  std::vector<std::complex<double>> iterates;   // z_0, z_1, ...
  OrbitStatus status = OrbitStatus::Undecided;
  std::optional<int> period;
  double tolerance = 0.0;
};

// Iterates the truncated polynomial from z0. Periodic means a return within
// tol * |z0| of z0; escaped means leaving |z| < escape_radius.
template <typename Scalar>
PseudoOrbit pseudo_orbit(BasicGerm<Scalar> const &f, std::complex<double> z0, int k_max, double escape_radius = 1.0,
                         double tol = 1e-9)
{
  if (!(std::abs(z0) < escape_radius)) { throw std::invalid_argument("pseudo_orbit: |z0| must be below escape_radius"); }
  PseudoOrbit orbit;
  orbit.tolerance = tol;
  orbit.iterates.push_back(z0);
  std::complex<double> z = z0;
  for (int n = 1; n <= k_max; ++n) {
    z = f(z);
    orbit.iterates.push_back(z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= escape_radius) {
      orbit.status = OrbitStatus::Escaped;
      return orbit;
    }
    if (std::abs(z - z0) <= tol * std::abs(z0)) {
      orbit.status = OrbitStatus::Periodic;
      orbit.period = n;
      return orbit;
    }
  }
  return orbit;
}

struct OrderSample
{
  std::complex<double> z0;
  PseudoOrbit orbit;
};

// Sampled check that every point's pseudo-orbit closes after at most k steps.
struct BoundedOrderFamily
{
  std::vector<OrderSample> samples;
  int max_length = 0;
  bool uniformly_bounded = false;
};

template <typename Scalar>
BoundedOrderFamily bounded_order_family(BasicGerm<Scalar> const &f, std::vector<std::complex<double>> const &points,
                                        int k, double escape_radius = 1.0, double tol = 1e-9)
{
  BoundedOrderFamily family;
  family.uniformly_bounded = true;
  for (auto const &z0 : points) {
    PseudoOrbit orbit = pseudo_orbit(f, z0, k, escape_radius, tol);
    if (orbit.status == OrbitStatus::Periodic) {
      family.max_length = std::max(family.max_length, *orbit.period);
    } else {
      family.uniformly_bounded = false;
    }
    family.samples.push_back({z0, std::move(orbit)});
  }
  return family;
}

} // namespace centerkit
