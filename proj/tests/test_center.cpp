#include <random>

#include "doctest.h"

#include "centerkit/center.hpp"
#include "centerkit/errors.hpp"
#include "support.hpp"

using namespace centerkit;
using testing::field;
using testing::series;

namespace {

Poly2 radius_power(int n, int j)
{
  return pow(series(n, {{2, 0, "1"}, {0, 2, "1"}}), unsigned(j));
}

// X(F) - sum_j eta_j (x^2 + y^2)^j, which must vanish to truncation.
Poly2 exactness_defect(RotationNormalization const &norm, LyapunovReport const &r)
{
  Poly2 defect = lie_derivative(norm.normalized, r.first_integral);
  int const n = defect.truncation();
  for (auto const &o : r.obstructions) { defect -= radius_power(n, o.index) * o.value; }
  return defect;
}

// Mean of x^a y^b over the unit circle: (a-1)!!(b-1)!!/(a+b)!! for even a, b.
Rational circle_mean(int a, int b)
{
  if (a % 2 != 0 || b % 2 != 0) { return 0; }
  auto dfact = [](int k) {
    Rational r(1);
    for (int m = k; m > 1; m -= 2) { r *= m; }
    return r;
  };
  return dfact(a - 1) * dfact(b - 1) / dfact(a + b);
}

Rational circle_mean(Poly2 const &p)
{
  Rational sum(0);
  for (auto const &[e, c] : p.terms()) { sum += c.re() * circle_mean(e.first, e.second); }
  return sum;
}

} // namespace

TEST_CASE("normalize_rotation examples")
{
  auto const id = normalize_rotation(testing::rotation(6));
  CHECK(id.change_matrix(0, 0).is_one());
  CHECK(id.change_matrix(0, 1).is_zero());
  CHECK(id.change_matrix(1, 0).is_zero());
  CHECK(id.change_matrix(1, 1).is_one());
  CHECK(id.time_rescale.is_one());

  auto const twice = normalize_rotation(field(6, {{0, 1, "-2"}}, {{1, 0, "2"}}));
  CHECK(twice.time_rescale == Coefficient(Rational(1, 2)));
  CHECK(twice.change_matrix(0, 0).is_one());
  CHECK(twice.change_matrix(1, 1).is_one());
  CHECK(twice.normalized.p == series(6, {{0, 1, "-1"}}));

  CHECK_THROWS_AS(normalize_rotation(field(6, {{0, 1, "1"}}, {{1, 0, "1"}})), NotARotation);
  CHECK_THROWS_AS(normalize_rotation(field(6, {{1, 0, "1"}, {0, 1, "-1"}}, {{1, 0, "1"}})), NotARotation);
  CHECK_THROWS_AS(normalize_rotation(field(6, {{0, 1, "-2"}}, {{1, 0, "1"}})), IrrationalFrequency);

  // Linear part [[1, -2], [1, -1]]: trace 0, det 1, not yet the standard rotation.
  auto const skew = normalize_rotation(field(6, {{1, 0, "1"}, {0, 1, "-2"}, {2, 0, "1"}}, {{1, 0, "1"}, {0, 1, "-1"}}));
  Matrix2c const lin = skew.normalized.linear_part();
  CHECK(lin(0, 0).is_zero());
  CHECK(lin(0, 1) == Coefficient(-1));
  CHECK(lin(1, 0) == Coefficient(1));
  CHECK(lin(1, 1).is_zero());
}

TEST_CASE("lyapunov_quantities examples")
{
  auto const lin = lyapunov_quantities(normalize_rotation(testing::rotation(10)), 10);
  CHECK_FALSE(lin.first_nonzero);
  CHECK(lin.first_integral == series(10, {{2, 0, "1"}, {0, 2, "1"}}));
  CHECK(lin.obstructions.size() == 4);

  auto const focus = lyapunov_quantities(normalize_rotation(testing::focus(8)), 8);
  REQUIRE(focus.first_nonzero);
  CHECK(*focus.first_nonzero == 2);
  REQUIRE(focus.first_nonzero_obstruction());
  CHECK(focus.first_nonzero_obstruction()->degree() == 4);
  CHECK(focus.first_nonzero_obstruction()->value == Coefficient(2));

  auto const ham = lyapunov_quantities(normalize_rotation(testing::hamiltonian_cubic(12)), 12);
  CHECK_FALSE(ham.first_nonzero);
  CHECK(ham.first_integral == series(12, {{2, 0, "1"}, {0, 2, "1"}, {3, 0, "2/3"}}));

  CHECK_THROWS(lyapunov_quantities(normalize_rotation(testing::rotation(6)), 8));
}

TEST_CASE("every report is exact to truncation")
{
  for (auto const &c : testing::corpus(10)) {
    CAPTURE(c.name);
    auto const norm = normalize_rotation(c.field);
    auto const r = lyapunov_quantities(norm, 10);
    CHECK(exactness_defect(norm, r).is_zero());
    CHECK(r.first_nonzero.has_value() == !c.center);
  }
}

TEST_CASE("obstructions equal circle averages of the residual")
{
  // Independent oracle: with F_{2j} of zero circle mean, eta_j is the circle
  // mean of the degree-2j part of X(F).
  for (auto const &c : testing::corpus(10)) {
    CAPTURE(c.name);
    auto const norm = normalize_rotation(c.field);
    auto const r = lyapunov_quantities(norm, 10);
    Poly2 const image = lie_derivative(norm.normalized, r.first_integral);
    for (auto const &o : r.obstructions) {
      CHECK(Coefficient(circle_mean(image.homogeneous(o.degree()))) == o.value);
      if (o.index >= 2) { CHECK(circle_mean(r.first_integral.homogeneous(o.degree())) == 0); }
    }
  }
}

TEST_CASE("rotation operator: odd degrees injective, even degrees corank one")
{
  for (int d = 1; d <= 13; ++d) {
    CAPTURE(d);
    auto const m = rotation_operator_matrix(d);
    CHECK(exact_rank(m) == (d % 2 == 1 ? d + 1 : d));
  }
}

TEST_CASE("random Hamiltonian perturbations are centers")
{
  std::mt19937 rng(23);
  int const n = 10;
  for (int trial = 0; trial < 8; ++trial) {
    Poly2 h = series(n + 1, {{2, 0, "1/2"}, {0, 2, "1/2"}});
    h += testing::random_series(rng, n + 1, 3, 4);
    VectorField2 const x_field(-h.dy(), h.dx());
    CHECK(lie_derivative(x_field, h).is_zero());
    auto const norm = normalize_rotation(x_field);
    auto const r = lyapunov_quantities(norm, n);
    CHECK_FALSE(r.first_nonzero);
    CHECK(lie_derivative(norm.normalized, r.first_integral).is_zero());
  }
}

TEST_CASE("positive rescaling keeps the first obstruction's index and sign")
{
  for (auto const &c : testing::corpus(8)) {
    CAPTURE(c.name);
    auto const base = lyapunov_quantities(normalize_rotation(c.field), 8);
    for (char const *s : {"2", "1/3", "5/2"}) {
      auto const scaled = lyapunov_quantities(normalize_rotation(c.field.scaled(Coefficient::parse(s))), 8);
      CHECK(scaled.first_nonzero == base.first_nonzero);
      if (base.first_nonzero) {
        CHECK(scaled.first_nonzero_obstruction()->value.re().sign()
              == base.first_nonzero_obstruction()->value.re().sign());
      }
    }
  }
}

TEST_CASE("morse_check examples")
{
  auto const disc = morse_check(series(4, {{2, 0, "1"}, {0, 2, "1"}}));
  CHECK(disc.nondegenerate);
  CHECK(disc.definite);
  auto const cusp = morse_check(series(4, {{2, 0, "1"}, {0, 3, "-1"}}));
  CHECK_FALSE(cusp.nondegenerate);
  auto const saddle = morse_check(series(4, {{1, 1, "1"}}));
  CHECK(saddle.nondegenerate);
  CHECK_FALSE(saddle.definite);
}

TEST_CASE("certify_center examples")
{
  auto const ham = certify_center(testing::hamiltonian_cubic(12), 12);
  CHECK(ham.verdict == CenterVerdict::CenterToOrderN);
  CHECK(to_string(ham.verdict) == "CENTER_TO_ORDER_N");
  CHECK(ham.morse.definite);

  auto const focus = certify_center(testing::focus(12), 12);
  CHECK(focus.verdict == CenterVerdict::Focus);
  REQUIRE(focus.focus);
  CHECK(focus.focus->value == Coefficient(2));
  CHECK(focus.focus_sign == 1);

  auto const attracting = certify_center(testing::corpus(12)[5].field, 12);
  CHECK(attracting.verdict == CenterVerdict::Focus);
  CHECK(attracting.focus->value == Coefficient(Rational(-3, 2)));
  CHECK(attracting.focus_sign == -1);

  auto const saddle = certify_center(field(6, {{0, 1, "1"}}, {{1, 0, "1"}}), 6);
  CHECK(saddle.verdict == CenterVerdict::NotApplicable);
  CHECK_FALSE(saddle.reason.empty());
}

TEST_CASE("first integral pulled back to original coordinates")
{
  // H = x^2/2 - xy + y^2 + x^3 has linear part [[1, -2], [1, -1]], not the standard rotation.
  VectorField2 const x_field = field(8, {{1, 0, "1"}, {0, 1, "-2"}}, {{1, 0, "1"}, {0, 1, "-1"}, {2, 0, "3"}});
  auto const cert = certify_center(x_field, 8);
  CHECK(cert.verdict == CenterVerdict::CenterToOrderN);
  REQUIRE(cert.first_integral_original);
  CHECK(lie_derivative(x_field, *cert.first_integral_original).is_zero());
}
