#include <random>

#include "doctest.h"

#include "centerkit/errors.hpp"
#include "centerkit/poly2.hpp"
#include "support.hpp"

using namespace centerkit;
using testing::series;

TEST_CASE("coefficient parsing and canonical form")
{
  CHECK(Coefficient::parse("6/4") == Coefficient(Rational(3, 2)));
  CHECK(Coefficient::parse("6/4").to_string() == "3/2");
  CHECK(Coefficient::parse("1/2+3/4 i") == Coefficient(Rational(1, 2), Rational(3, 4)));
  CHECK(Coefficient::parse("-i") == Coefficient(Rational(0), Rational(-1)));
  CHECK_THROWS_AS(Coefficient::parse("2/-4"), ParseError);   // sign belongs on the numerator
  CHECK_THROWS_AS(Coefficient::parse("1/0"), ValidationError);
  CHECK_THROWS_AS(Coefficient::parse("abc"), ParseError);
  CHECK_THROWS_AS(Coefficient::parse(""), ParseError);
  for (char const *text : {"0", "-7/3", "1/2+3/4 i", "-5/6 i", "2-1/3 i"}) {
    Coefficient const c = Coefficient::parse(text);
    CHECK(Coefficient::parse(c.to_string()) == c);
  }
  Coefficient const z(Rational(3), Rational(4));
  CHECK(z * z.inverse() == Coefficient(1));
  CHECK(z.norm2() == Coefficient(25));
  CHECK(pow(Coefficient::i(), 4) == Coefficient(1));
}

TEST_CASE("poly2 storage invariants")
{
  Poly2 p(3);
  p.add(1, 1, 2).add(1, 1, -2).add(2, 2, 5).add(0, 3, 1);
  CHECK(p.coeff(1, 1).is_zero());
  CHECK(p.terms().size() == 1);   // zero sums removed, degree-4 term dropped
  CHECK(p.max_degree() == 3);
  CHECK(p.order() == 3);
  CHECK(Poly2(4).order() == -1);

  Poly2 const a = series(5, {{1, 0, "1"}});
  Poly2 const b = series(3, {{0, 1, "1"}});
  CHECK((a + b).truncation() == 3);
  CHECK((a * b).truncation() == 3);
  CHECK(a.is_real());
  CHECK_FALSE((a * Coefficient::i()).is_real());
}

TEST_CASE("mul examples")
{
  int const n = 5;
  Poly2 const x = Poly2::x(n), y = Poly2::y(n);
  CHECK((x + y) * (x - y) == series(n, {{2, 0, "1"}, {0, 2, "-1"}}));

  Poly2 geometric(n);
  for (int k = 0; k <= n; ++k) { geometric.add(k, 0, k % 2 == 0 ? 1 : -1); }
  CHECK((Poly2::constant(n, 1) + x) * geometric == Poly2::constant(n, 1));

  Poly2 const r2 = series(n, {{2, 0, "1"}, {0, 2, "1"}});
  CHECK(r2 * r2 == series(n, {{4, 0, "1"}, {2, 2, "2"}, {0, 4, "1"}}));
}

TEST_CASE("lie_derivative examples")
{
  int const n = 8;
  Poly2 const r2 = series(n, {{2, 0, "1"}, {0, 2, "1"}});
  CHECK(lie_derivative(testing::rotation(n), r2).is_zero());

  Poly2 const cusp_level = series(n, {{2, 0, "1"}, {0, 3, "-1"}});
  CHECK(lie_derivative(testing::cusp(n), cusp_level).is_zero());

  Poly2 const expected = Coefficient(2) * (r2 * r2);
  Poly2 const got = lie_derivative(testing::focus(n), r2);
  CHECK(got == expected.with_truncation(got.truncation()));
}

TEST_CASE("lie_derivative keeps every determined degree")
{
  // A field of order 1 and an f of order 2 determine X(f) through min(N_X + 1, N_f).
  Poly2 const f = series(6, {{1, 1, "1"}, {3, 2, "1"}});
  VectorField2 const x_field(f.dy(), -f.dx());   // truncation 5
  Poly2 const image = lie_derivative(x_field, f);
  CHECK(image.truncation() == 6);
  CHECK(image.is_zero());
  // A field with a constant term costs one degree.
  VectorField2 const translation(Poly2::constant(6, 1), Poly2(6));
  CHECK(lie_derivative(translation, f).truncation() == 5);
}

TEST_CASE("linear_change examples")
{
  int const n = 4;
  Matrix2c id;
  id << Coefficient(1), Coefficient(0), Coefficient(0), Coefficient(1);
  Poly2 const xy = series(n, {{1, 1, "1"}});
  CHECK(linear_change(xy, id) == xy);

  Coefficient const i = Coefficient::i();
  Poly2 const r2 = series(n, {{2, 0, "1"}, {0, 2, "1"}});
  Matrix2c m;
  m << Coefficient(1), Coefficient(1), i, -i;
  CHECK(linear_change(r2, m) == series(n, {{1, 1, "4"}}, false));
  Coefficient const half(Rational(1, 2));
  Matrix2c halved;
  halved << half, half, -i * half, i * half;   // x = (u + v)/2, y = (u - v)/(2i)
  CHECK(linear_change(r2, halved) == series(n, {{1, 1, "1"}}, false));

  Matrix2c swap;
  swap << Coefficient(0), Coefficient(1), Coefficient(1), Coefficient(0);
  CHECK(linear_change(Poly2::x(n), swap) == Poly2::y(n));

  Matrix2c singular;
  singular << Coefficient(1), Coefficient(2), Coefficient(2), Coefficient(4);
  CHECK_THROWS_AS(linear_change(r2, singular), SingularMatrix);
}

TEST_CASE("evaluate examples")
{
  using cd = std::complex<double>;
  int const n = 4;
  CHECK(std::abs(evaluate(series(n, {{2, 0, "1"}, {0, 2, "1"}}), 3.0, 4.0) - 25.0) < 1e-12);
  CHECK(std::abs(evaluate(series(n, {{1, 1, "1"}}), cd(0, 1), cd(0, -1)) - 1.0) < 1e-12);
  CHECK(std::abs(evaluate(series(n, {{2, 0, "1"}, {0, 3, "-1"}}), 1.0, 1.0)) < 1e-12);
}

TEST_CASE("ring axioms on random series")
{
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    bool const complex = trial % 2 == 1;
    Poly2 const a = testing::random_series(rng, 6, 0, 6, complex);
    Poly2 const b = testing::random_series(rng, 6, 0, 6, complex);
    Poly2 const c = testing::random_series(rng, 6, 0, 6, complex);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("leibniz rule on random inputs")
{
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int const n = 7;
    VectorField2 const x_field(testing::random_series(rng, n, 1, n), testing::random_series(rng, n, 1, n));
    Poly2 const f = testing::random_series(rng, n, 1, n);
    Poly2 const g = testing::random_series(rng, n, 1, n);
    Poly2 const lhs = lie_derivative(x_field, f * g);
    Poly2 const rhs = lie_derivative(x_field, f) * g + f * lie_derivative(x_field, g);
    int const common = std::min(lhs.truncation(), rhs.truncation());
    CHECK(lhs.with_truncation(common) == rhs.with_truncation(common));
  }
}

TEST_CASE("linear_change is a ring morphism")
{
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix2c m;
    do {
      m << Coefficient(entry(rng)), Coefficient(entry(rng)), Coefficient(entry(rng)), Coefficient(entry(rng));
    } while ((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).is_zero());
    Poly2 const f = testing::random_series(rng, 6, 0, 6, trial % 3 == 0);
    Poly2 const g = testing::random_series(rng, 6, 0, 6);
    CHECK(linear_change(f * g, m) == linear_change(f, m) * linear_change(g, m));
    CHECK(linear_change(f + g, m) == linear_change(f, m) + linear_change(g, m));
  }
}

TEST_CASE("evaluate is multiplicative")
{
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> coord(-0.35, 0.35);
  for (int trial = 0; trial < 20; ++trial) {
    // Degree 6 factors in truncation 12: the product is exact.
    Poly2 const u = testing::random_series(rng, 12, 0, 6, true);
    Poly2 const v = testing::random_series(rng, 12, 0, 6, true);
    std::complex<double> const x(coord(rng), coord(rng)), y(coord(rng), coord(rng));
    std::complex<double> const expected = evaluate(u, x, y) * evaluate(v, x, y);
    CHECK(std::abs(evaluate(u * v, x, y) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("vector fields and forms share truncation and reality")
{
  VectorField2 const f(series(5, {{0, 1, "-1"}}), series(3, {{1, 0, "1"}}));
  CHECK(f.p.truncation() == f.q.truncation());
  CHECK(f.singular_at_origin());
  VectorField2 const g(Poly2::constant(3, 1), Poly2(3));
  CHECK_FALSE(g.singular_at_origin());
  OneForm2 const w(series(4, {{0, 1, "1"}}), series(4, {{1, 0, "i"}}, false));
  CHECK_FALSE(w.a.is_real());
  CHECK_FALSE(w.b.is_real());
  // dual / kernel are inverse up to the sign convention omega = p dy - q dx.
  VectorField2 const rot = testing::rotation(4);
  OneForm2 const dual = OneForm2::dual(rot);
  CHECK(dual.kernel_field().p == rot.p);
  CHECK(dual.kernel_field().q == rot.q);
}
