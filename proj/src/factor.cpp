#include "centerkit/complex.hpp"
#include "centerkit/errors.hpp"

namespace centerkit {

namespace {

// Solves F(x, a(x)) = 0 for a(x) = sum_{k>=2} a_k x^k when axis == 0, or
// F(b(y), y) = 0 when axis == 1. The branch is returned as a Poly2 in the
// free variable.
Poly2 solve_branch(Poly2 const &f, int axis)
{
  int const n = f.truncation();
  Poly2 const free = axis == 0 ? Poly2::x(n) : Poly2::y(n);
  Poly2 branch(n, f.is_real());
  for (int k = 2; k + 1 <= n; ++k) {
    Poly2 const on_branch = axis == 0 ? substitute(f, free, branch) : substitute(f, branch, free);
    // The z^(k+1) coefficient equals branch_k (from the xy term) plus terms
    // fixed by lower branch coefficients.
    Coefficient const c = axis == 0 ? on_branch.coeff(k + 1, 0) : on_branch.coeff(0, k + 1);
    if (axis == 0) {
      branch.set(k, 0, -c);
    } else {
      branch.set(0, k, -c);
    }
  }
  Poly2 const check = axis == 0 ? substitute(f, free, branch) : substitute(f, branch, free);
  if (!check.is_zero()) {
    auto const &e = check.terms().begin()->first;
    throw BranchFailure("branch equation not satisfied at x^" + std::to_string(e.first) + " y^"
                        + std::to_string(e.second));
  }
  return branch;
}

} // namespace

Poly2 FactorPair::product() const { return mul_to(f, g, truncation); }

Poly2 FactorPair::reconstruct() const { return mul_to(mul_to(branch_f, g, truncation), unit, truncation); }

FactorPair factor_fg(Poly2 const &first_integral, int truncation)
{
  if (truncation > first_integral.truncation()) {
    throw std::invalid_argument("factor_fg: truncation exceeds the series' truncation");
  }
  if (truncation < 3) { throw std::invalid_argument("factor_fg: truncation must be at least 3"); }
  Poly2 const big_f = first_integral.with_truncation(truncation);
  if (!big_f.coeff(0, 0).is_zero() || !big_f.coeff(1, 0).is_zero() || !big_f.coeff(0, 1).is_zero()
      || !big_f.coeff(2, 0).is_zero() || !big_f.coeff(0, 2).is_zero() || !big_f.coeff(1, 1).is_one()) {
    throw PreconditionViolation("factor_fg needs F = xy + higher order terms");
  }
  int const n = truncation;
  Poly2 const a = solve_branch(big_f, 0);   // y = a(x)
  Poly2 const b = solve_branch(big_f, 1);   // x = b(y)
  Poly2 const x = Poly2::x(n);
  Poly2 const y = Poly2::y(n);
  Poly2 const branch_f = y - a;
  Poly2 const g = x - b;

  // Invert (X, Y) = (g, branch_f): x = X + b(y), y = Y + a(x), one order per pass.
  Poly2 xs = x;
  Poly2 ys = y;
  for (int pass = 0; pass < n; ++pass) {
    Poly2 const next_x = x + substitute(b, xs, ys);
    Poly2 const next_y = y + substitute(a, xs, ys);
    xs = next_x;
    ys = next_y;
  }
  Poly2 const in_branch_coords = substitute(big_f, xs, ys);
  // F = X Y u(X, Y).
  Poly2 reduced(n - 2, big_f.is_real());
  for (auto const &[e, c] : in_branch_coords.terms()) {
    if (e.first < 1 || e.second < 1) {
      throw BranchFailure("F is not divisible by the branch product at x^" + std::to_string(e.first) + " y^"
                          + std::to_string(e.second));
    }
    reduced.add(e.first - 1, e.second - 1, c);
  }
  Poly2 const unit = substitute(reduced, g.with_truncation(n - 2), branch_f.with_truncation(n - 2));

  FactorPair pair{mul_to(branch_f, unit, n - 1), g, branch_f, unit, n, false};
  Coefficient const det = pair.f.coeff(1, 0) * g.coeff(0, 1) - pair.f.coeff(0, 1) * g.coeff(1, 0);
  pair.general_position = !det.is_zero();
  if (!(pair.reconstruct() == big_f) || !(pair.product() == big_f)) {
    throw BranchFailure("factorization does not reconstruct F to truncation");
  }
  return pair;
}

} // namespace centerkit
