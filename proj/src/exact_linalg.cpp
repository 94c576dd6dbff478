#include "centerkit/exact_linalg.hpp"

#include <utility>

namespace centerkit {

namespace {

// Reduces [m | rhs] in place to row-echelon form; returns pivot columns.
std::vector<Eigen::Index> eliminate(MatrixXc &m, VectorXc *rhs)
{
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pick = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) {
        pick = r;
        break;
      }
    }
    if (pick < 0) { continue; }
    if (pick != row) {
      m.row(pick).swap(m.row(row));
      if (rhs) { std::swap((*rhs)(pick), (*rhs)(row)); }
    }
    Coefficient const inv = m(row, col).inverse();
    for (Eigen::Index c = col; c < m.cols(); ++c) { m(row, c) *= inv; }
    if (rhs) { (*rhs)(row) *= inv; }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) { continue; }
      Coefficient const f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) { m(r, c) -= f * m(row, c); }
      if (rhs) { (*rhs)(r) -= f * (*rhs)(row); }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

Eigen::Index exact_rank(MatrixXc m) { return Eigen::Index(eliminate(m, nullptr).size()); }

std::optional<VectorXc> exact_solve(MatrixXc m, VectorXc rhs)
{
  auto const pivots = eliminate(m, &rhs);
  for (Eigen::Index r = Eigen::Index(pivots.size()); r < rhs.size(); ++r) {
    if (!rhs(r).is_zero()) { return std::nullopt; }
  }
  VectorXc v(m.cols());
  for (Eigen::Index c = 0; c < v.size(); ++c) { v(c) = Coefficient(); }
  for (std::size_t k = 0; k < pivots.size(); ++k) { v(pivots[k]) = rhs(Eigen::Index(k)); }
  return v;
}

std::vector<Exponent> homogeneous_basis(int degree)
{
  std::vector<Exponent> basis;
  for (int i = degree; i >= 0; --i) { basis.emplace_back(i, degree - i); }
  return basis;
}

} // namespace centerkit
