#include <random>

#include "doctest.h"

#include "centerkit/complex.hpp"
#include "centerkit/errors.hpp"
#include "centerkit/exact_linalg.hpp"
#include "support.hpp"

using namespace centerkit;
using testing::form;
using testing::series;
using cd = std::complex<double>;

namespace {

OneForm2 siegel_linear(int n) { return form(n, {{0, 1, "1"}}, {{1, 0, "1"}}); }

OneForm2 random_siegel(std::mt19937 &rng, int n)
{
  OneForm2 w = siegel_linear(n);
  w.a += testing::random_series(rng, n, 2, 3, true);
  w.b += testing::random_series(rng, n, 2, 3, true);
  return w;
}

// Smallest degree D at which dF ^ omega = 0 through degree D has no solution
// F = xy + (degrees 3..D), by one dense exact solve per D. Absent up to max_degree.
std::optional<int> first_blocked_degree(OneForm2 const &omega, int max_degree)
{
  for (int top = 3; top <= max_degree; ++top) {
    std::vector<Exponent> unknowns;
    for (int d = 3; d <= top; ++d) {
      for (auto const &e : homogeneous_basis(d)) { unknowns.push_back(e); }
    }
    std::vector<Exponent> equations;
    for (int d = 2; d <= top; ++d) {
      for (auto const &e : homogeneous_basis(d)) { equations.push_back(e); }
    }
    OneForm2 const w(omega.a.with_truncation(top), omega.b.with_truncation(top));
    MatrixXc m(Eigen::Index(equations.size()), Eigen::Index(unknowns.size()));
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
      Poly2 const image =
        wedge_differential(Poly2::monomial(top + 1, unknowns[c].first, unknowns[c].second), w);
      for (std::size_t r = 0; r < equations.size(); ++r) {
        m(Eigen::Index(r), Eigen::Index(c)) = image.coeff(equations[r].first, equations[r].second);
      }
    }
    Poly2 const base = wedge_differential(Poly2::monomial(top + 1, 1, 1), w);
    VectorXc rhs(Eigen::Index(equations.size()));
    for (std::size_t r = 0; r < equations.size(); ++r) {
      rhs(Eigen::Index(r)) = -base.coeff(equations[r].first, equations[r].second);
    }
    if (!exact_solve(m, rhs)) { return top; }
  }
  return std::nullopt;
}

TangentBasis plane(Eigen::Vector4d const &u, Eigen::Vector4d const &v)
{
  TangentBasis b;
  b.col(0) = u;
  b.col(1) = v;
  return b;
}

} // namespace

TEST_CASE("siegel_check examples")
{
  CHECK(siegel_check(siegel_linear(4)));
  CHECK_FALSE(siegel_check(form(4, {{0, 1, "-1"}}, {{1, 0, "1"}})));
  CHECK(siegel_check(form(4, {{0, 1, "1"}, {2, 0, "3"}}, {{1, 0, "1"}, {1, 1, "i"}})));
  CHECK_FALSE(siegel_check(form(4, {{0, 1, "2"}}, {{1, 0, "1"}})));
}

TEST_CASE("complexify examples")
{
  SiegelForm const lin = complexify(normalize_rotation(testing::rotation(6)));
  CHECK(lin.form.a == siegel_linear(6).a);
  CHECK(lin.form.b == siegel_linear(6).b);

  Poly2 const r2 = complexify_function(lin, series(6, {{2, 0, "1"}, {0, 2, "1"}}));
  CHECK(r2.terms().size() == 1);
  CHECK_FALSE(r2.coeff(1, 1).is_zero());

  for (auto const &c : testing::corpus(8)) {
    CAPTURE(c.name);
    SiegelForm const s = complexify(normalize_rotation(c.field));
    CHECK(siegel_check(s.form));
    // Idempotence: an already Siegel form passes through unchanged.
    SiegelForm const again = siegel_form(s.form);
    CHECK(again.form.a == s.form.a);
    CHECK(again.form.b == s.form.b);
  }
  CHECK_THROWS_AS(siegel_form(form(4, {{0, 1, "-1"}}, {{1, 0, "1"}})), PreconditionViolation);
}

TEST_CASE("complexified real first integrals are first integrals of the form")
{
  for (auto const &c : testing::corpus(10)) {
    if (!c.center) { continue; }
    CAPTURE(c.name);
    auto const norm = normalize_rotation(c.field);
    auto const report = lyapunov_quantities(norm, 10);
    SiegelForm const s = complexify(norm);
    Poly2 const f = complexify_function(s, report.first_integral);
    CHECK(wedge_differential(f, s.form).is_zero());
  }
}

TEST_CASE("formal_first_integral_siegel examples")
{
  Poly2 const big_f = series(10, {{1, 1, "1"}, {3, 2, "1"}});
  SiegelForm const s = siegel_form(OneForm2::differential(big_f));
  auto const integral = formal_first_integral_siegel(s, 10);
  CHECK(integral.first_integral == big_f.complexified());
  CHECK_FALSE(integral.first_nonzero);
  CHECK(wedge_differential(integral.first_integral, s.form).is_zero());

  auto const lin = formal_first_integral_siegel(siegel_form(siegel_linear(6)), 7);
  CHECK(lin.first_integral == series(7, {{1, 1, "1"}}, false));

  CHECK_THROWS(formal_first_integral_siegel(siegel_form(siegel_linear(6)), 8));
}

TEST_CASE("first obstruction degree agrees with a dense solve")
{
  std::vector<OneForm2> forms{
    form(8, {{0, 1, "1"}}, {{1, 0, "1"}, {2, 0, "1"}}),           // x dy + y dx + x^2 dy
    form(8, {{0, 1, "1"}}, {{1, 0, "1"}, {2, 1, "1"}}),           // ... + x^2 y dy
    OneForm2::differential(series(8, {{1, 1, "1"}, {2, 1, "1"}, {0, 4, "1/2"}}, false)),
  };
  std::mt19937 rng(41);
  for (int k = 0; k < 3; ++k) { forms.push_back(random_siegel(rng, 8)); }
  for (std::size_t k = 0; k < forms.size(); ++k) {
    CAPTURE(k);
    auto const integral = formal_first_integral_siegel(siegel_form(forms[k]), 8);
    auto const blocked = first_blocked_degree(forms[k], 8);
    if (integral.first_nonzero) {
      REQUIRE(blocked);
      CHECK(*blocked == 2 * *integral.first_nonzero);
    } else {
      CHECK_FALSE(blocked);
    }
  }
}

TEST_CASE("Siegel operator: odd degrees injective, even degrees corank one")
{
  for (int d = 1; d <= 12; ++d) {
    CAPTURE(d);
    CHECK(exact_rank(siegel_operator_matrix(d)) == (d % 2 == 1 ? d + 1 : d));
  }
}

TEST_CASE("blowup examples")
{
  auto const saddle = blowup(siegel_linear(6));
  CHECK_FALSE(saddle.dicritical());
  CHECK(saddle.gluing_consistent);
  CHECK(saddle.chart_t.a.coeff(0, 1) == Coefficient(2));
  CHECK(saddle.chart_t.a.terms().size() == 1);
  CHECK(saddle.chart_t.b.coeff(1, 0) == Coefficient(1));
  CHECK(saddle.chart_t.b.terms().size() == 1);
  REQUIRE(saddle.singularities_on_E.size() == 2);
  for (auto const &s : saddle.singularities_on_E) {
    CHECK(std::abs(s.location) < 1e-12);
    CHECK(std::abs(s.ratio - cd(-0.5)) < 1e-12);
  }

  auto const radial = blowup(form(6, {{0, 1, "-1"}}, {{1, 0, "1"}}));   // x dy - y dx
  CHECK(radial.dicritical());
  CHECK(radial.chart_t.a.is_zero());
  CHECK(radial.chart_t.b == Poly2::constant(radial.chart_t.b.truncation(), 1).complexified());

  auto const disc = blowup(OneForm2::differential(series(6, {{2, 0, "1"}, {0, 2, "1"}}, false)));
  CHECK_FALSE(disc.dicritical());
  std::vector<cd> t_points;
  for (auto const &s : disc.singularities_on_E) {
    if (s.chart == "t") { t_points.push_back(s.location); }
  }
  REQUIRE(t_points.size() == 2);
  CHECK(std::abs(t_points[0] * t_points[1] - cd(1.0)) < 1e-12);   // roots of 1 + t^2
  CHECK(std::abs(t_points[0] + t_points[1]) < 1e-12);
  CHECK(std::abs(std::abs(t_points[0].imag()) - 1.0) < 1e-12);

  CHECK_THROWS_AS(blowup(form(6, {{1, 1, "1"}}, {{2, 0, "1"}})), NotIsolated);
  CHECK_THROWS_AS(blowup(form(6, {}, {})), NotIsolated);
  CHECK_THROWS_AS(blowup(form(6, {{0, 0, "1"}}, {})), PreconditionViolation);
}

TEST_CASE("blowup of random Siegel forms")
{
  std::mt19937 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    auto const result = blowup(random_siegel(rng, 6));
    CHECK_FALSE(result.dicritical());
    CHECK(result.gluing_consistent);
    REQUIRE(result.singularities_on_E.size() == 2);
    for (auto const &s : result.singularities_on_E) { CHECK(std::abs(s.ratio - cd(-0.5)) < 1e-12); }
  }
}

TEST_CASE("factor_fg examples")
{
  Poly2 const big_f = series(10, {{1, 1, "1"}, {3, 2, "1"}});
  FactorPair const pair = factor_fg(big_f, 10);
  CHECK(pair.f == series(pair.f.truncation(), {{0, 1, "1"}, {2, 2, "1"}}));
  CHECK(pair.g == series(pair.g.truncation(), {{1, 0, "1"}}));
  CHECK(pair.unit == series(pair.unit.truncation(), {{0, 0, "1"}, {2, 1, "1"}}));
  CHECK(pair.general_position);
  CHECK(pair.product() == big_f);
  CHECK(wedge_differential(pair.product(), OneForm2::differential(big_f)).is_zero());

  FactorPair const cubic = factor_fg(series(8, {{1, 1, "1"}, {3, 0, "1"}}), 8);
  CHECK(cubic.f == series(cubic.f.truncation(), {{0, 1, "1"}, {2, 0, "1"}}));
  CHECK(cubic.g == series(cubic.g.truncation(), {{1, 0, "1"}}));

  CHECK_THROWS_AS(factor_fg(series(6, {{2, 0, "1"}, {0, 2, "1"}}), 6), PreconditionViolation);
}

TEST_CASE("factors of formal integrals of random integrable forms")
{
  std::mt19937 rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    Poly2 big_f = series(8, {{1, 1, "1"}}, false);
    big_f += testing::random_series(rng, 8, 3, 5, true);
    OneForm2 const omega = OneForm2::differential(big_f);
    auto const integral = formal_first_integral_siegel(siegel_form(omega), 8);
    REQUIRE_FALSE(integral.first_nonzero);
    FactorPair const pair = factor_fg(integral.first_integral, 8);
    CHECK(pair.product() == integral.first_integral);
    CHECK(wedge_differential(pair.product(), omega).is_zero());
  }
}

TEST_CASE("real_slice examples")
{
  FactorPair const pair = factor_fg(series(10, {{1, 1, "1"}, {3, 2, "1"}}), 10);
  RealSlice const slice = real_slice(pair);
  CHECK(slice.samples.size() >= 50);
  CHECK(slice.all_products_ok);
  CHECK(slice.all_contact_one);
  for (auto const &s : slice.samples) {
    CHECK(std::abs(s.fg.imag()) <= 1e-9);
    CHECK(s.fg.real() >= -1e-9);
  }

  FactorPair degenerate = pair;
  degenerate.g = degenerate.f;
  degenerate.general_position = false;
  CHECK_THROWS_AS(real_slice(degenerate), PreconditionViolation);
}

TEST_CASE("contact_order examples")
{
  Eigen::Vector4d const re_x(1, 0, 0, 0), im_x(0, 1, 0, 0), re_y(0, 0, 1, 0);
  OneForm2 const dy = form(4, {}, {{0, 0, "1"}});
  OneForm2 const dx = form(4, {{0, 0, "1"}}, {});
  cd const x(0.1, 0.05), y(0.0);
  CHECK(contact_order(dy, x, y, plane(re_x, re_y)) == 1);   // real plane meets the leaf y = const in a line
  CHECK(contact_order(dy, x, y, plane(re_x, im_x)) == 2);   // the leaf itself
  CHECK(contact_order(dx, x, y, plane(re_x, im_x)) == 0);   // transverse complex lines
  CHECK_THROWS_AS(contact_order(siegel_linear(4), cd(0.0), cd(0.0), plane(re_x, re_y)), SingularPoint);
}
