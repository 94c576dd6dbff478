#pragma once

#include <optional>
#include <string>
#include <vector>

#include "centerkit/exact_linalg.hpp"
#include "centerkit/poly2.hpp"

namespace centerkit {

// Coordinates (x, y) = change_matrix (u, v) and time rescaled by time_rescale
// bring the field to (-v + ...) d/du + (u + ...) d/dv.
struct RotationNormalization
{
  VectorField2 original;
  Matrix2c change_matrix;
  Coefficient time_rescale;
  VectorField2 normalized;

  // Pulls a function of the normalized coordinates back to the original ones.
  Poly2 to_original(Poly2 const &f) const;
};

// Requires a singular field with traceless linear part of positive determinant,
// and (for exact arithmetic) a rational frequency sqrt(det).
RotationNormalization normalize_rotation(VectorField2 const &field);

struct Obstruction
{
  int index;           // j, the obstruction sits in degree 2j
  Coefficient value;   // eta_j
  int degree() const { return 2 * index; }
};

struct LyapunovReport
{
  int truncation_degree;
  Poly2 first_integral;   // x^2 + y^2 + h.o.t. in normalized coordinates
  std::vector<Obstruction> obstructions;
  std::optional<int> first_nonzero;   // index into obstructions' j, not vector position

  Obstruction const *first_nonzero_obstruction() const;
};

// Degree-by-degree construction of F with X(F) = sum_j eta_j (x^2 + y^2)^j.
// Each F_{2j} is chosen with zero circle average, which makes eta_j unique.
LyapunovReport lyapunov_quantities(RotationNormalization const &norm, int truncation);

// Matrix of the rotation operator -y d/dx + x d/dy on degree-d homogeneous polynomials.
MatrixXc rotation_operator_matrix(int degree);

struct MorseReport
{
  bool nondegenerate = false;
  bool definite = false;
  explicit operator bool() const { return nondegenerate; }
};

MorseReport morse_check(Poly2 const &f);

enum class CenterVerdict
{
  CenterToOrderN,
  Focus,
  NotApplicable
};

std::string to_string(CenterVerdict v);

struct CenterCertificate
{
  CenterVerdict verdict = CenterVerdict::NotApplicable;
  int truncation = 0;
  std::string reason;
  std::optional<RotationNormalization> normalization;
  std::optional<LyapunovReport> report;
  std::optional<Obstruction> focus;   // first nonzero obstruction, for FOCUS
  int focus_sign = 0;                 // +1 repelling, -1 attracting
  std::optional<Poly2> first_integral_original;
  MorseReport morse;
};

CenterCertificate certify_center(VectorField2 const &field, int truncation);

} // namespace centerkit
