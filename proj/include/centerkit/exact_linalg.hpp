#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "centerkit/poly2.hpp"

namespace centerkit {

using MatrixXc = Eigen::Matrix<Coefficient, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<Coefficient, Eigen::Dynamic, 1>;

// Row-echelon rank over the Gaussian rationals.
Eigen::Index exact_rank(MatrixXc m);

// Some solution of m v = rhs, or nullopt when the system is inconsistent.
std::optional<VectorXc> exact_solve(MatrixXc m, VectorXc rhs);

// Monomials x^i y^(d-i) of degree d, ordered by descending i.
std::vector<Exponent> homogeneous_basis(int degree);

// Matrix of a linear map on degree-d homogeneous polynomials to degree-e ones,
// columns indexed by homogeneous_basis(d), rows by homogeneous_basis(e).
template <typename Map> MatrixXc operator_matrix(int from_degree, int to_degree, Map &&op)
{
  auto const cols = homogeneous_basis(from_degree);
  auto const rows = homogeneous_basis(to_degree);
  MatrixXc m(Eigen::Index(rows.size()), Eigen::Index(cols.size()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Poly2 const image = op(Poly2::monomial(to_degree + 1, cols[c].first, cols[c].second));
    for (Eigen::Index r = 0; r < m.rows(); ++r) { m(r, c) = image.coeff(rows[r].first, rows[r].second); }
  }
  return m;
}

} // namespace centerkit
