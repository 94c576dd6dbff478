#include <algorithm>
#include <cmath>

#include <boost/math/tools/toms748_solve.hpp>

#include "centerkit/errors.hpp"
#include "centerkit/flow.hpp"

namespace centerkit {

namespace {

struct Crossing
{
  double t;
  Point p;
  double flux;   // X . n at the crossing
};

double locate(DenseStep const &step, Point const &normal)
{
  auto g = [&](double t) { return normal.dot(step.at(t)); };
  std::uintmax_t iterations = 200;
  auto const bracket = boost::math::tools::toms748_solve(
    g, step.t0, step.t1(), g(step.t0), g(step.t1()),
    [](double a, double b) { return std::abs(b - a) <= event_time_tol; }, iterations);
  return 0.5 * (bracket.first + bracket.second);
}

// Calls on_cross for every sign change of normal . x(t) until it returns true
// (then returns true), or until the budget runs out or the orbit leaves the domain.
template <typename OnCross>
bool for_each_crossing(Dopri5 &stepper, NumericField const &field, Point const &normal, double t_budget,
                       OnCross &&on_cross)
{
  double g_prev = normal.dot(stepper.state());
  while (stepper.time() < t_budget && !stepper.outside_domain()) {
    DenseStep const &step = stepper.advance(t_budget);
    double const g_cur = normal.dot(step.end());
    if (g_prev != 0.0 && (g_cur == 0.0 || (g_prev < 0.0) != (g_cur < 0.0))) {
      double const t = g_cur == 0.0 ? step.t1() : locate(step, normal);
      Point const p = step.at(t);
      if (on_cross(Crossing{t, p, normal.dot(field(p))})) { return true; }
    }
    g_prev = g_cur;
  }
  return false;
}

void check_radius(TransverseSegment const &seg, double r)
{
  if (!(r > 0.0) || r > seg.length) {
    throw PreconditionViolation("return map seed " + std::to_string(r) + " is not in (0, "
                                + std::to_string(seg.length) + "]");
  }
}

ReturnMapSample run_return(VectorField2 const &field, TransverseSegment const &seg, double r,
                           ReturnOptions const &options, bool half)
{
  check_radius(seg, r);
  NumericField const numeric(field);
  Dopri5 stepper(numeric, seg.point(r), options.tol, options.integration);
  ReturnMapSample out;
  out.r_in = r;
  bool const found = for_each_crossing(stepper, numeric, seg.normal(), options.t_budget, [&](Crossing const &c) {
    ++out.crossings;
    double const along = seg.direction.dot(c.p);
    if (half ? along < 0.0 : along > 0.0) {
      out.r_out = std::abs(along);
      out.time = c.t;
      return true;
    }
    return false;
  });
  if (!found) {
    throw NoReturn(std::string(half ? "half" : "full") + " return from r = " + std::to_string(r)
                   + " not reached within t = " + std::to_string(options.t_budget));
  }
  out.converged = out.r_out > 0.0;
  return out;
}

} // namespace

TransverseSegment make_segment(VectorField2 const &field, Point const &direction, double length, int samples)
{
  if (!(length > 0.0)) { throw PreconditionViolation("segment length must be positive"); }
  if (!(direction.norm() > 0.0)) { throw PreconditionViolation("segment direction must be nonzero"); }
  TransverseSegment seg{direction.normalized(), length};
  NumericField const numeric(field);
  for (int k = 1; k <= samples; ++k) {
    Point const p = seg.point(length * k / samples);
    if (std::abs(seg.normal().dot(numeric(p))) < transversality_floor) {
      throw PreconditionViolation("field is not transverse to the segment at distance "
                                  + std::to_string(length * k / samples));
    }
  }
  return seg;
}

ReturnMapSample half_return_map(VectorField2 const &field, TransverseSegment const &seg, double r,
                                ReturnOptions const &options)
{
  return run_return(field, seg, r, options, true);
}

ReturnMapSample return_map(VectorField2 const &field, TransverseSegment const &seg, double r,
                           ReturnOptions const &options)
{
  return run_return(field, seg, r, options, false);
}

PeriodicSequenceVerdict detect_periodic_sequence(VectorField2 const &field, TransverseSegment const &seg,
                                                 std::vector<double> const &radii, ReturnOptions const &options)
{
  if (radii.empty()) { throw PreconditionViolation("detect_periodic_sequence needs at least one radius"); }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] < radii[k - 1]))) {
      throw PreconditionViolation("radii must be positive and strictly decreasing");
    }
  }
  PeriodicSequenceVerdict out;
  out.radii = radii;
  out.periodic = true;
  out.caveat = "numeric periodicity cannot separate a center from a focus whose first obstruction "
               "lies below the tolerance; the symbolic verdict is authoritative";
  for (double r : radii) {
    ReturnMapSample const s = return_map(field, seg, r, options);
    double const residual = std::abs(s.r_out - r);
    out.returns.push_back(s.r_out);
    out.residuals.push_back(residual);
    out.relative_residuals.push_back(residual / r);
    out.periodic = out.periodic && residual / r <= out.tolerance;
  }
  return out;
}

std::vector<BoundedOrderReport> bounded_order_scan(VectorField2 const &field, TransverseSegment const &seg,
                                                   std::vector<Point> const &points, int k,
                                                   ScanOptions const &options)
{
  if (k < 1) { throw PreconditionViolation("bounded_order_scan needs k >= 1"); }
  NumericField const forward(field);
  Point const normal = seg.normal();
  std::vector<BoundedOrderReport> out;
  for (Point const &p0 : points) {
    BoundedOrderReport report;
    report.point = p0;
    auto record = [&](double along) {
      bool const seen = std::any_of(report.crossings.begin(), report.crossings.end(),
                                    [&](double s) { return std::abs(s - along) <= 1e-6 * std::max(s, along); });
      if (!seen) { report.crossings.push_back(along); }
      return seen;
    };
    double const along0 = seg.direction.dot(p0);
    if (std::abs(normal.dot(p0)) <= 1e-12 * std::max(1.0, p0.norm()) && along0 > 0.0 && along0 <= seg.length) {
      record(along0);
    }
    for (NumericField const &numeric : {forward, forward.reversed()}) {
      Dopri5 stepper(numeric, p0, options.tol, options.integration);
      bool const closed = for_each_crossing(stepper, numeric, normal, options.t_budget, [&](Crossing const &c) {
        double const along = seg.direction.dot(c.p);
        if (along <= 0.0 || along > seg.length || std::abs(c.flux) < transversality_floor) { return false; }
        return record(along);
      });
      report.closed = report.closed || closed;
      if (!closed && !stepper.outside_domain()) { report.budget_exhausted = true; }
    }
    if (report.closed) { report.budget_exhausted = false; }
    report.count = int(report.crossings.size());
    report.within_bound = report.count <= k;
    out.push_back(std::move(report));
  }
  return out;
}

double level_set_conservation(VectorField2 const &field, Poly2 const &f, Point const &x0, double t_max, double tol,
                              IntegrationOptions const &options)
{
  RealPoly const level = RealPoly::from(f);
  Trajectory const trajectory = integrate(field, x0, t_max, tol, options);
  double const f0 = level(x0.x(), x0.y());
  double worst = 0.0;
  for (auto const &s : trajectory.samples) { worst = std::max(worst, std::abs(level(s.x, s.y) - f0)); }
  return worst;
}

} // namespace centerkit
