#pragma once

#include <complex>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Core>

#include "centerkit/poly2.hpp"

namespace centerkit {

// Floating-point image of a Poly2 for fast repeated evaluation: coefficient of
// x^i y^j stored at (i, j) of a dense (N+1)x(N+1) array, upper-left triangle used.
template <typename Scalar> class DensePoly2
{
public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  DensePoly2() = default;
  explicit DensePoly2(Coeffs c)
    : c_(std::move(c))
  {
  }

  static DensePoly2 from(Poly2 const &p)
  {
    int const n = std::max(p.max_degree(), 0);
    Coeffs c = Coeffs::Zero(n + 1, n + 1);
    for (auto const &[e, v] : p.terms()) {
      if constexpr (std::is_same_v<Scalar, double>) {
        if (!v.is_real()) { throw std::invalid_argument("DensePoly2<double>: complex coefficient"); }
        c(e.first, e.second) = v.re().template convert_to<double>();
      } else {
        c(e.first, e.second) = Scalar(v.to_complex());
      }
    }
    return DensePoly2(std::move(c));
  }

  Coeffs const &coeffs() const { return c_; }
  Eigen::Index degree() const { return c_.rows() - 1; }

  // Nested Horner: sum_i x^i (sum_j c_ij y^j).
  template <typename T> auto operator()(T const &x, T const &y) const
  {
    using R = std::common_type_t<Scalar, T>;
    R acc(0);
    for (Eigen::Index i = c_.rows(); i-- > 0;) {
      R inner(0);
      for (Eigen::Index j = c_.cols() - i; j-- > 0;) { inner = inner * y + R(c_(i, j)); }
      acc = acc * x + inner;
    }
    return acc;
  }

  DensePoly2 dx() const
  {
    if (c_.rows() <= 1) { return DensePoly2(Coeffs::Zero(1, 1)); }
    Coeffs d = Coeffs::Zero(c_.rows() - 1, c_.cols() - 1);
    for (Eigen::Index i = 1; i < c_.rows(); ++i) {
      for (Eigen::Index j = 0; i + j < c_.rows(); ++j) { d(i - 1, j) = Scalar(double(i)) * c_(i, j); }
    }
    return DensePoly2(std::move(d));
  }

  DensePoly2 dy() const
  {
    if (c_.rows() <= 1) { return DensePoly2(Coeffs::Zero(1, 1)); }
    Coeffs d = Coeffs::Zero(c_.rows() - 1, c_.cols() - 1);
    for (Eigen::Index i = 0; i < c_.rows(); ++i) {
      for (Eigen::Index j = 1; i + j < c_.rows(); ++j) { d(i, j - 1) = Scalar(double(j)) * c_(i, j); }
    }
    return DensePoly2(std::move(d));
  }

private:
  Coeffs c_ = Coeffs::Zero(1, 1);
};

using RealPoly = DensePoly2<double>;
using ComplexPoly = DensePoly2<std::complex<double>>;

} // namespace centerkit
