#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "centerkit/errors.hpp"
#include "centerkit/flow.hpp"

namespace centerkit {

namespace {

// Dormand-Prince 5(4) tableau; the field is autonomous so the nodes c_i are unused.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense output weights.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double scaled_norm(Point const &v, Point const &scale) { return std::sqrt(0.5 * v.cwiseQuotient(scale).squaredNorm()); }

Point error_scale(Point const &a, Point const &b, double tol)
{
  return tol * a.cwiseAbs().cwiseMax(b.cwiseAbs()).cwiseMax(Point::Ones());
}

} // namespace

NumericField::NumericField(VectorField2 const &field, double sign)
  : p_(RealPoly::from(field.p))
  , q_(RealPoly::from(field.q))
  , sign_(sign)
{
  if (!field.is_real()) { throw PreconditionViolation("numeric integration needs a real vector field"); }
}

NumericField NumericField::reversed() const
{
  NumericField out = *this;
  out.sign_ = -sign_;
  return out;
}

Point DenseStep::at(double t) const
{
  double const theta = (t - t0) / h;
  double const theta1 = 1.0 - theta;
  return r[0] + theta * (r[1] + theta1 * (r[2] + theta * (r[3] + theta1 * r[4])));
}

Point Trajectory::at(double t) const
{
  auto it = std::lower_bound(steps.begin(), steps.end(), t, [](DenseStep const &s, double v) { return s.t1() < v; });
  if (it == steps.end()) { return end(); }
  return it->at(t);
}

Dopri5::Dopri5(NumericField field, Point x0, double tol, IntegrationOptions options)
  : field_(std::move(field))
  , y_(x0)
  , tol_(tol)
  , options_(options)
{
  if (!(tol > 0.0)) { throw PreconditionViolation("integration tolerance must be positive"); }
  k1_ = field_(y_);
  // Initial step guess after Hairer, Norsett and Wanner.
  Point const scale = error_scale(y_, y_, tol_);
  double const n0 = scaled_norm(y_, scale);
  double const n1 = scaled_norm(k1_, scale);
  double h0 = (n0 < 1e-5 || n1 < 1e-5) ? 1e-6 : 0.01 * n0 / n1;
  Point const k2 = field_(y_ + h0 * k1_);
  double const n2 = scaled_norm(k2 - k1_, scale) / h0;
  double const big = std::max(n1, n2);
  double const h1 = big <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / big, 0.2);
  h_ = std::min(100.0 * h0, h1);
}

bool Dopri5::outside_domain() const { return y_.cwiseAbs().maxCoeff() > options_.domain_box; }

DenseStep const &Dopri5::advance(double t_stop)
{
  for (;;) {
    if (h_ < options_.min_step) {
      throw StepUnderflow("step size fell below " + std::to_string(options_.min_step) + " at t = "
                          + std::to_string(t_));
    }
    if (++steps_ > options_.max_steps) { throw StepUnderflow("step budget exhausted at t = " + std::to_string(t_)); }
    double const h = std::min(h_, t_stop - t_);
    Point const &k1 = k1_;
    Point const k2 = field_(y_ + h * a21 * k1);
    Point const k3 = field_(y_ + h * (a31 * k1 + a32 * k2));
    Point const k4 = field_(y_ + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Point const k5 = field_(y_ + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Point const k6 = field_(y_ + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Point const y1 = y_ + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    Point const k7 = field_(y1);
    Point const err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double const ratio = scaled_norm(err, error_scale(y_, y1, tol_));
    bool const finite = y1.allFinite() && std::isfinite(ratio);
    double const factor = finite ? std::clamp(0.9 * std::pow(std::max(ratio, 1e-10), -0.2), 0.2, 10.0) : 0.2;
    if (!finite || ratio > 1.0) {
      h_ = h * std::min(factor, 1.0);
      continue;
    }
    Point const diff = y1 - y_;
    Point const bspl = h * k1 - diff;
    last_.t0 = t_;
    last_.h = h;
    last_.r = {y_, diff, bspl, diff - h * k7 - bspl, h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)};
    last_.error_ratio = ratio;
    y_ = y1;
    k1_ = k7;
    t_ = t_ + h == t_stop ? t_stop : t_ + h;
    // Keep the proposed step when the last one was clipped by t_stop.
    if (h == h_) { h_ = h * factor; }
    return last_;
  }
}

Trajectory integrate(VectorField2 const &field, Point const &x0, double t_max, double tol,
                     IntegrationOptions const &options)
{
  Dopri5 stepper(NumericField(field), x0, tol, options);
  Trajectory out;
  out.tolerance_used = tol;
  out.samples.push_back({0.0, x0.x(), x0.y()});
  while (stepper.time() < t_max) {
    if (stepper.outside_domain()) {
      out.stop = StopReason::LeftDomain;
      return out;
    }
    out.steps.push_back(stepper.advance(t_max));
    out.samples.push_back({stepper.time(), stepper.state().x(), stepper.state().y()});
  }
  out.stop = stepper.outside_domain() ? StopReason::LeftDomain : StopReason::TimeReached;
  return out;
}

void write_orbit_csv(Trajectory const &trajectory, std::string const &path)
{
  std::unique_ptr<FILE, int (*)(FILE *)> file(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!file) { throw std::runtime_error("cannot open " + path + " for writing"); }
  std::fputs("t,x,y\n", file.get());
  for (auto const &s : trajectory.samples) { std::fprintf(file.get(), "%.17g,%.17g,%.17g\n", s.t, s.x, s.y); }
}

} // namespace centerkit
