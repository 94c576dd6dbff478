#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "centerkit/dense_poly.hpp"
#include "centerkit/poly2.hpp"

namespace centerkit {

using Point = Eigen::Vector2d;

// Floating-point image of a real VectorField2; `sign` = -1 runs time backwards.
class NumericField
{
public:
  explicit NumericField(VectorField2 const &field, double sign = 1.0);

  Point operator()(Point const &z) const { return sign_ * Point(p_(z.x(), z.y()), q_(z.x(), z.y())); }
  NumericField reversed() const;

private:
  RealPoly p_;
  RealPoly q_;
  double sign_ = 1.0;
};

// One accepted Dormand-Prince step together with its dense-output coefficients.
struct DenseStep
{
  double t0 = 0.0;
  double h = 0.0;
  std::array<Point, 5> r;
  double error_ratio = 0.0;   // scaled local error estimate, <= 1 when accepted

  double t1() const { return t0 + h; }
  Point start() const { return r[0]; }
  Point end() const { return r[0] + r[1]; }
  Point at(double t) const;
};

struct TrajectorySample
{
  double t;
  double x;
  double y;
};

enum class StopReason
{
  TimeReached,
  LeftDomain,
  Event
};

struct Trajectory
{
  std::vector<TrajectorySample> samples;
  std::vector<DenseStep> steps;
  double tolerance_used = 0.0;
  StopReason stop = StopReason::TimeReached;

  Point end() const { return {samples.back().x, samples.back().y}; }
  Point at(double t) const;
};

struct IntegrationOptions
{
  double domain_box = 10.0;   // stop once max(|x|, |y|) exceeds this
  double min_step = 1e-14;
  int max_steps = 10'000'000;
};

// Adaptive Dormand-Prince 5(4) stepper. Error scale per component is
// tol * max(1, |y|).
class Dopri5
{
public:
  Dopri5(NumericField field, Point x0, double tol, IntegrationOptions options = {});

  // Advances one accepted step, never past t_stop. Throws StepUnderflow.
  DenseStep const &advance(double t_stop);

  double time() const { return t_; }
  Point const &state() const { return y_; }
  bool outside_domain() const;
  int steps_taken() const { return steps_; }

private:
  NumericField field_;
  Point y_;
  Point k1_;
  double t_ = 0.0;
  double h_ = 0.0;
  double tol_;
  IntegrationOptions options_;
  int steps_ = 0;
  DenseStep last_;
};

// Throws PreconditionViolation for non-positive tol and StepUnderflow on collapse.
Trajectory integrate(VectorField2 const &field, Point const &x0, double t_max, double tol,
                     IntegrationOptions const &options = {});

// CSV with header t,x,y, one row per accepted step, 17 significant digits.
void write_orbit_csv(Trajectory const &trajectory, std::string const &path);

// The ray {length * s * direction : 0 < s <= 1} from the origin.
struct TransverseSegment
{
  Point direction{1.0, 0.0};
  double length = 0.2;

  Point normal() const { return {-direction.y(), direction.x()}; }
  Point point(double r) const { return r * direction; }
};

inline constexpr double transversality_floor = 1e-6;
inline constexpr double event_time_tol = 1e-12;

// Normalizes the direction and checks |X . n| >= transversality_floor at
// `samples` equally spaced points off the origin. Throws PreconditionViolation.
TransverseSegment make_segment(VectorField2 const &field, Point const &direction, double length, int samples = 16);

struct ReturnMapSample
{
  double r_in = 0.0;
  double r_out = 0.0;
  int crossings = 0;
  bool converged = false;
  double time = 0.0;
};

struct ReturnOptions
{
  double tol = 1e-12;
  double t_budget = 100.0;
  IntegrationOptions integration{};
};

// First crossing of the opposite ray; r_out is the distance from the origin.
ReturnMapSample half_return_map(VectorField2 const &field, TransverseSegment const &seg, double r,
                                ReturnOptions const &options = {});
// First return to the segment's ray.
ReturnMapSample return_map(VectorField2 const &field, TransverseSegment const &seg, double r,
                           ReturnOptions const &options = {});

inline constexpr double periodic_rel_tol = 1e-8;

struct PeriodicSequenceVerdict
{
  bool periodic = false;
  std::vector<double> radii;
  std::vector<double> returns;
  std::vector<double> residuals;            // |P(r) - r|
  std::vector<double> relative_residuals;   // |P(r) - r| / r
  double tolerance = periodic_rel_tol;
  std::string caveat;

  std::string verdict() const { return periodic ? "PERIODIC_SEQUENCE" : "NOT_PERIODIC"; }
};

PeriodicSequenceVerdict detect_periodic_sequence(VectorField2 const &field, TransverseSegment const &seg,
                                                 std::vector<double> const &radii, ReturnOptions const &options = {});

struct BoundedOrderReport
{
  Point point;
  int count = 0;        // distinct points of the orbit on the segment
  bool within_bound = false;
  bool closed = false;  // orbit came back to a recorded crossing
  bool budget_exhausted = false;
  std::vector<double> crossings;   // positions along the segment
};

struct ScanOptions
{
  double t_budget = 1000.0;
  double tol = 1e-10;
  IntegrationOptions integration{};
};

std::vector<BoundedOrderReport> bounded_order_scan(VectorField2 const &field, TransverseSegment const &seg,
                                                   std::vector<Point> const &points, int k,
                                                   ScanOptions const &options = {});

double level_set_conservation(VectorField2 const &field, Poly2 const &f, Point const &x0, double t_max, double tol,
                              IntegrationOptions const &options = {});

} // namespace centerkit
