#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "centerkit/poly2.hpp"

namespace testing {

using centerkit::Coefficient;
using centerkit::OneForm2;
using centerkit::Poly2;
using centerkit::VectorField2;

using Term = std::tuple<int, int, char const *>;

inline Poly2 series(int n, std::initializer_list<Term> terms, bool real = true)
{
  Poly2 p(n, real);
  for (auto const &[i, j, c] : terms) { p.add(i, j, Coefficient::parse(c)); }
  return p;
}

inline VectorField2 field(int n, std::initializer_list<Term> p, std::initializer_list<Term> q)
{
  return {series(n, p), series(n, q)};
}

inline OneForm2 form(int n, std::initializer_list<Term> a, std::initializer_list<Term> b)
{
  return {series(n, a, false), series(n, b, false)};
}

inline VectorField2 rotation(int n) { return field(n, {{0, 1, "-1"}}, {{1, 0, "1"}}); }

struct CorpusField
{
  std::string name;
  VectorField2 field;
  bool center;
};

// Two centers, two Hamiltonian perturbed centers, two foci.
inline std::vector<CorpusField> corpus(int n = 12)
{
  return {
    {"linear center", rotation(n), true},
    {"reversible center", field(n, {{0, 1, "-1"}, {1, 1, "1"}}, {{1, 0, "1"}, {2, 0, "1"}}), true},
    {"hamiltonian cubic", field(n, {{0, 1, "-1"}}, {{1, 0, "1"}, {2, 0, "1"}}), true},
    {"hamiltonian quartic", field(n, {{0, 1, "-1"}, {2, 0, "-1"}, {0, 2, "1"}}, {{1, 0, "1"}, {1, 1, "2"}, {3, 0, "1"}}),
     true},
    {"repelling focus", field(n, {{0, 1, "-1"}, {3, 0, "1"}, {1, 2, "1"}}, {{1, 0, "1"}, {2, 1, "1"}, {0, 3, "1"}}),
     false},
    {"attracting focus", field(n, {{0, 1, "-1"}, {3, 0, "-1"}}, {{1, 0, "1"}, {0, 3, "-1"}}), false},
  };
}

inline VectorField2 focus(int n = 12) { return corpus(n)[4].field; }
inline VectorField2 hamiltonian_cubic(int n = 12) { return corpus(n)[2].field; }
inline VectorField2 cusp(int n = 6) { return field(n, {{0, 2, "3"}}, {{1, 0, "2"}}); }

// Random series with small integer-over-small-integer coefficients.
inline Poly2 random_series(std::mt19937 &rng, int n, int min_degree, int max_degree, bool complex = false)
{
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Poly2 p(n, !complex);
  for (int d = min_degree; d <= max_degree; ++d) {
    for (int i = 0; i <= d; ++i) {
      centerkit::Rational re(num(rng), den(rng));
      centerkit::Rational im = complex ? centerkit::Rational(num(rng), den(rng)) : centerkit::Rational(0);
      p.add(i, d - i, Coefficient(re, im));
    }
  }
  return p;
}

} // namespace testing
