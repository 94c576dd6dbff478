#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "centerkit/complex.hpp"
#include "centerkit/flow.hpp"
#include "centerkit/germ.hpp"
#include "centerkit/poly2.hpp"

namespace centerkit {

enum class ProblemKind
{
  RealField,
  ComplexForm,
  Germ
};

std::string to_string(ProblemKind k);

struct FieldAnalysis
{
  std::optional<int> lyapunov_truncation;   // defaults to the field's truncation
  std::vector<double> radii{0.2, 0.1, 0.05, 0.025};
  double tol = 1e-12;
  Point segment_direction{1.0, 0.0};
  double segment_length = 0.25;
  double t_budget = 100.0;
  // Bounded-order scan, run when scan_points is nonempty.
  std::vector<Point> scan_points;
  Point scan_direction{1.0, 0.0};
  double scan_length = 1.0;
  int scan_k = 2;
  double scan_t_budget = 1000.0;
  double scan_tol = 1e-10;
  double domain_box = 10.0;
};

struct FormAnalysis
{
  std::optional<int> integral_truncation;   // defaults to the form's truncation + 1
  SliceGrid slice{};
};

struct GermAnalysis
{
  int k_max = 50;
  std::vector<std::complex<double>> orbit_seeds{{0.01, 0.0}, {0.0, 0.02}, {0.03, 0.03}, {0.05, 0.0}};
  int orbit_steps = 200;
  double escape_radius = 1.0;
  double orbit_tol = 1e-9;
};

struct ProblemSpec
{
  ProblemKind kind = ProblemKind::RealField;
  std::string name;
  int truncation = 0;
  std::optional<VectorField2> field;   // real_field
  std::optional<OneForm2> form;        // complex_form
  std::optional<Germ1> germ;           // germ with Gaussian rational coefficients
  std::optional<NumericGerm> numeric_germ;   // germ with multiplier exp(2 pi i p/q)
  std::optional<std::pair<int, int>> multiplier_root;
  FieldAnalysis field_analysis;
  FormAnalysis form_analysis;
  GermAnalysis germ_analysis;
  std::string source;   // raw input text, hashed into the report
};

// Throws ParseError (syntax, with line and column) or ValidationError.
ProblemSpec parse_spec_text(std::string const &text, std::string const &origin = "<input>");
ProblemSpec parse_spec(std::string const &path);

} // namespace centerkit
