#include "velavg/kinetic/duhamel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "velavg/kinetic/kinematics.hpp"
#include "velavg/numerics/quadrature.hpp"

namespace velavg {

namespace {

// Shrinks [lo, hi] (in the backward time offset sigma = s - t) to the values
// for which x + v*sigma stays inside the slab [a, b] along one axis.
void clip_slab(double x, double v, double a, double b, double& lo, double& hi) {
  if (v == 0.0) {
    if (x < a || x > b) hi = lo - 1.0;
    return;
  }
  double s1 = (a - x) / v;
  double s2 = (b - x) / v;
  if (s1 > s2) std::swap(s1, s2);
  lo = std::max(lo, s1);
  hi = std::min(hi, s2);
}

void clip_ball(const Vec3& x, const Vec3& v, const Ball3& ball, double& lo, double& hi) {
  const Vec3 d = x - ball.center;
  const double a = norm2(v);
  const double b = dot(d, v);
  const double c = norm2(d) - ball.radius * ball.radius;
  if (a == 0.0) {
    if (c > 0.0) hi = lo - 1.0;
    return;
  }
  const double disc = b * b - a * c;
  if (disc <= 0.0) {
    hi = lo - 1.0;
    return;
  }
  const double root = std::sqrt(disc);
  lo = std::max(lo, (-b - root) / a);
  hi = std::min(hi, (-b + root) / a);
}

}  // namespace

ScalarField7 duhamel_solve(const ScalarField7& f, const DuhamelOptions& options) {
  if (options.quad_order < 2) {
    throw std::invalid_argument("duhamel_solve: quad_order must be >= 2");
  }
  if (options.panels < 1) throw std::invalid_argument("duhamel_solve: panels must be >= 1");

  const SupportBox& in = f.support();
  const double T = in.horizon;
  const Interval window = f.time_window();
  const Box3 xbox = f.spatial_box();
  const std::optional<Ball3> xball = f.hints().x;
  const Ball3 pball = f.momentum_ball();
  const bool damped = options.damped;
  const int panels = options.panels;
  const GaussLegendre rule = gauss_legendre(options.quad_order);

  auto eval = [=](double t, const Vec3& x, const Vec3& p) {
    if (!pball.contains(p)) return 0.0;
    const Vec3 v = velocity(p);
    // sigma = s - t ranges over [window.lo - t, min(window.hi, t) - t].
    double lo = window.lo - t;
    double hi = std::min(window.hi, t) - t;
    if (!(hi > lo)) return 0.0;
    for (int i = 0; i < 3; ++i) clip_slab(x[i], v[i], xbox.lo[i], xbox.hi[i], lo, hi);
    if (!(hi > lo)) return 0.0;
    if (xball) {
      clip_ball(x, v, *xball, lo, hi);
      if (!(hi > lo)) return 0.0;
    }
    auto integrand = [&](double sigma) {
      const double val = f(t + sigma, x + sigma * v, p);
      return damped ? std::exp(sigma) * val : val;
    };
    return integrate_composite(integrand, lo, hi, panels, rule);
  };

  SupportBox out = in;
  out.t = {in.t.lo, T};
  out.x = in.x.dilated(T);

  SupportHints hints;
  hints.t = Interval{window.lo, T};
  hints.p = pball;
  if (xball) {
    const double reach = max_speed(norm(pball.center) + pball.radius) * (T - window.lo);
    hints.x = Ball3{xball->center, xball->radius + reach};
  }
  return ScalarField7(eval, out, f.smoothness(), hints);
}

double transport_residual(const ScalarField7& u, const ScalarField7& f, const PhasePoint& pt,
                          double h_fd, TransportForm form) {
  if (!(h_fd > 0.0)) throw std::invalid_argument("transport_residual: h_fd must be positive");
  const double inv = 0.5 / h_fd;
  const double dt = (u(pt.t + h_fd, pt.x, pt.p) - u(pt.t - h_fd, pt.x, pt.p)) * inv;
  const Vec3 v = velocity(pt.p);
  double adv = 0.0;
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = pt.x;
    Vec3 xm = pt.x;
    xp[i] += h_fd;
    xm[i] -= h_fd;
    adv += v[i] * (u(pt.t, xp, pt.p) - u(pt.t, xm, pt.p)) * inv;
  }
  double r = dt + adv - f(pt.t, pt.x, pt.p);
  if (form == TransportForm::damped) r += u(pt.t, pt.x, pt.p);
  return r;
}

}  // namespace velavg
