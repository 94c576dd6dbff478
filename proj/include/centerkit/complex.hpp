#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "centerkit/center.hpp"
#include "centerkit/poly2.hpp"

namespace centerkit {

// A 1-form with linear part exactly x dy + y dx. `change` records the linear
// substitution (x, y) = change (u, v) that produced it from real coordinates.
struct SiegelForm
{
  OneForm2 form;
  Matrix2c change;
};

bool siegel_check(OneForm2 const &form);

// Complexifies a normalized rotation: u = x + i y, v = x - i y, dual form divided
// by i so that its linear part is u dv + v du; then u, v are renamed x, y.
SiegelForm complexify(RotationNormalization const &norm);

// Accepts a form that already has Siegel linear part, unchanged.
SiegelForm siegel_form(OneForm2 const &form);

// A real function F(x, y) rewritten in the complex coordinates of `siegel`.
Poly2 complexify_function(SiegelForm const &siegel, Poly2 const &real_function);

struct SiegelIntegral
{
  Poly2 first_integral;                  // xy + h.o.t.
  std::vector<Obstruction> obstructions; // coefficient of (xy)^j in dF ^ omega
  std::optional<int> first_nonzero;
};

SiegelIntegral formal_first_integral_siegel(SiegelForm const &siegel, int truncation);

// Matrix of F -> dF ^ omega_1 with omega_1 = x dy + y dx on degree-d polynomials.
MatrixXc siegel_operator_matrix(int degree);

struct DivisorSingularity
{
  std::string chart;             // "t" (y = t x) or "s" (x = s y)
  std::complex<double> location; // value of t or s on the divisor
  std::complex<double> lambda_transverse;
  std::complex<double> lambda_tangent;
  std::complex<double> ratio;    // transverse / tangent
};

struct BlowupResult
{
  OneForm2 chart_t;   // coordinates (x, t); a is the dx, b the dt coefficient
  OneForm2 chart_s;   // coordinates (s, y); a is the ds, b the dy coefficient
  int multiplicity_t = 0;   // power of x divided out
  int multiplicity_s = 0;   // power of y divided out
  bool divisor_invariant = true;
  bool gluing_consistent = true;
  std::vector<DivisorSingularity> singularities_on_E;

  bool dicritical() const { return !divisor_invariant; }
};

BlowupResult blowup(OneForm2 const &form);

struct FactorPair
{
  Poly2 f;          // branch_f * unit, so that f g = F
  Poly2 g;          // x - b(y)
  Poly2 branch_f;   // y - a(x)
  Poly2 unit;
  int truncation = 0;
  bool general_position = false;

  // f g to the source truncation.
  Poly2 product() const;
  // branch_f g unit to the source truncation.
  Poly2 reconstruct() const;
};

FactorPair factor_fg(Poly2 const &first_integral, int truncation);

// Real dimension of T_p V intersected with the complex tangent line of the
// foliation, both seen in R^4 = (Re x, Im x, Re y, Im y).
using TangentBasis = Eigen::Matrix<double, 4, 2>;
int contact_order(OneForm2 const &form, std::complex<double> x, std::complex<double> y, TangentBasis const &basis);

struct SliceGrid
{
  std::vector<double> radii{0.02, 0.05, 0.1};
  int angles = 24;
  double step_tol = 1e-12;
  double residual_tol = 1e-10;
  double check_tol = 1e-9;
};

struct SliceSample
{
  std::complex<double> x;
  std::complex<double> y;
  std::complex<double> fg;
  double residual = 0.0;
  TangentBasis tangent;
  int contact = -1;
  bool product_ok = false;
};

struct RealSlice
{
  std::vector<SliceSample> samples;
  double tol = 0.0;
  int seeds = 0;
  int failed_seeds = 0;
  bool no_samples = false;
  bool all_products_ok = false;
  bool all_contact_one = false;
};

RealSlice real_slice(FactorPair const &pair, SliceGrid const &grid = {});

} // namespace centerkit
