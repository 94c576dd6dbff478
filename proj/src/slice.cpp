#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "centerkit/complex.hpp"
#include "centerkit/dense_poly.hpp"
#include "centerkit/errors.hpp"

namespace centerkit {

namespace {

using cd = std::complex<double>;

Eigen::Vector4d embed(cd x, cd y) { return {x.real(), x.imag(), y.real(), y.imag()}; }

// Real 2x2 Jacobian of z -> p z - conj(q z) as a map R^2 -> R^2.
Eigen::Matrix2d real_jacobian(cd p, cd q)
{
  cd const along_re = p - std::conj(q);
  cd const along_im = cd(0.0, 1.0) * (p + std::conj(q));
  Eigen::Matrix2d j;
  j << along_re.real(), along_im.real(), along_re.imag(), along_im.imag();
  return j;
}

Eigen::Matrix<double, 2, 4> full_jacobian(ComplexPoly const &fx, ComplexPoly const &fy, ComplexPoly const &gx,
                                          ComplexPoly const &gy, cd x, cd y)
{
  Eigen::Matrix<double, 2, 4> j;
  j.leftCols<2>() = real_jacobian(fx(x, y), gx(x, y));
  j.rightCols<2>() = real_jacobian(fy(x, y), gy(x, y));
  return j;
}

int rank(Eigen::MatrixXd const &m, double rel_tol)
{
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  auto const &s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) { return 0; }
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_tol * s(0)) { ++r; }
  }
  return r;
}

} // namespace

int contact_order(OneForm2 const &form, cd x, cd y, TangentBasis const &basis)
{
  cd const a = evaluate(form.a, x, y);
  cd const b = evaluate(form.b, x, y);
  if (std::abs(a) + std::abs(b) <= 1e-14) { throw SingularPoint("1-form vanishes at the sample point"); }
  // Leaf direction v = (b, -a) spans a complex line; as a real plane: v and i v.
  Eigen::Matrix<double, 4, 2> leaf;
  leaf.col(0) = embed(b, -a);
  leaf.col(1) = embed(cd(0.0, 1.0) * b, cd(0.0, -1.0) * a);

  Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>> qt(basis);
  Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>> ql(leaf);
  Eigen::Matrix<double, 4, 4> both;
  both.leftCols<2>() = qt.householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
  both.rightCols<2>() = ql.householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
  int const r_plane = rank(basis, 1e-8);
  int const r_leaf = rank(leaf, 1e-8);
  return r_plane + r_leaf - rank(both, 1e-8);
}

RealSlice real_slice(FactorPair const &pair, SliceGrid const &grid)
{
  if (!pair.general_position) { throw PreconditionViolation("real_slice: f and g are not in general position"); }
  ComplexPoly const f = ComplexPoly::from(pair.f);
  ComplexPoly const g = ComplexPoly::from(pair.g);
  ComplexPoly const fx = f.dx(), fy = f.dy(), gx = g.dx(), gy = g.dy();
  OneForm2 const foliation = OneForm2::differential(pair.product());

  RealSlice out;
  out.tol = grid.check_tol;
  out.all_products_ok = true;
  out.all_contact_one = true;
  for (double rho : grid.radii) {
    for (int k = 0; k < grid.angles; ++k) {
      ++out.seeds;
      cd const x = std::polar(rho, 2.0 * std::numbers::pi * k / grid.angles);
      // Solve f(x, y) = conj(g(x, y)) for y by damped Newton from y = 0.
      cd y(0.0);
      auto residual = [&](cd yy) { return f(x, yy) - std::conj(g(x, yy)); };
      cd h = residual(y);
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        Eigen::Vector2d const rhs(-h.real(), -h.imag());
        Eigen::Vector2d const step = real_jacobian(fy(x, y), gy(x, y)).fullPivLu().solve(rhs);
        double damping = 1.0;
        cd trial = y + damping * cd(step(0), step(1));
        cd h_trial = residual(trial);
        while (std::abs(h_trial) > std::abs(h) && damping > 1e-6) {
          damping *= 0.5;
          trial = y + damping * cd(step(0), step(1));
          h_trial = residual(trial);
        }
        y = trial;
        h = h_trial;
        if (damping * step.norm() <= grid.step_tol && std::abs(h) <= grid.residual_tol) {
          converged = true;
          break;
        }
        if (std::abs(h) <= 1e-3 * grid.residual_tol) {
          converged = true;
          break;
        }
      }
      if (!converged || std::abs(h) > grid.residual_tol) {
        ++out.failed_seeds;
        continue;
      }
      SliceSample s;
      s.x = x;
      s.y = y;
      s.residual = std::abs(h);
      s.fg = f(x, y) * g(x, y);
      s.product_ok = std::abs(s.fg.imag()) <= grid.check_tol && s.fg.real() >= -grid.check_tol;
      Eigen::Matrix<double, 2, 4> const dh = full_jacobian(fx, fy, gx, gy, x, y);
      Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> svd(dh, Eigen::ComputeFullV);
      s.tangent = svd.matrixV().rightCols<2>();
      s.contact = contact_order(foliation, x, y, s.tangent);
      out.all_products_ok = out.all_products_ok && s.product_ok;
      out.all_contact_one = out.all_contact_one && s.contact == 1;
      out.samples.push_back(s);
    }
  }
  out.no_samples = out.samples.empty();
  if (out.no_samples) {
    out.all_products_ok = false;
    out.all_contact_one = false;
  }
  return out;
}

} // namespace centerkit
