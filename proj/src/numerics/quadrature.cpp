#include "velavg/numerics/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace velavg {

std::string to_string(QuadratureKind kind) {
  switch (kind) {
    case QuadratureKind::gauss_legendre: return "gauss-legendre";
    case QuadratureKind::trapezoid: return "trapezoid";
    case QuadratureKind::spherical_product: return "spherical-product";
    case QuadratureKind::adaptive: return "adaptive";
  }
  return "unknown";
}

GaussLegendre gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    } else {
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double* error_estimate) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
  };
  auto eval = [&](double lo, double hi) {
    double err = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err);
    return Segment{lo, hi, v, err};
  };
  if (a == b) {
    if (error_estimate) *error_estimate = 0.0;
    return 0.0;
  }
  std::priority_queue<Segment> heap;
  Segment first = eval(a, b);
  double total = first.value;
  double total_err = first.error;
  double magnitude = std::fabs(first.value);
  heap.push(first);
  constexpr int kMaxSegments = 20000;
  // Error estimates cannot drop below the rounding floor of the sum itself.
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  int segments = 1;
  while (total_err > std::max(abs_tol, kRoundoff * magnitude) && segments < kMaxSegments) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = eval(worst.a, mid);
    Segment right = eval(mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    magnitude += std::fabs(left.value) + std::fabs(right.value) - std::fabs(worst.value);
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Re-sum to shed accumulated cancellation in the running totals.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  if (error_estimate) *error_estimate = total_err;
  return total;
}

std::string BallRule::description() const {
  std::ostringstream os;
  os << "spherical-product radial=gauss-legendre(" << n_radial
     << ") polar=gauss-legendre-cos(" << n_polar << ") azimuthal=trapezoid("
     << n_azimuthal << ")";
  return os.str();
}

BallRule make_ball_rule(const Ball3& ball, int n_radial, int n_polar,
                        int n_azimuthal) {
  if (n_radial < 1 || n_polar < 1 || n_azimuthal < 1) {
    throw std::invalid_argument("make_ball_rule: node counts must be positive");
  }
  if (!(ball.radius > 0.0)) {
    throw std::invalid_argument("make_ball_rule: radius must be positive");
  }
  BallRule rule;
  rule.ball = ball;
  rule.n_radial = n_radial;
  rule.n_polar = n_polar;
  rule.n_azimuthal = n_azimuthal;
  const GaussLegendre radial = gauss_legendre(n_radial);
  const GaussLegendre polar = gauss_legendre(n_polar);
  const double R = ball.radius;
  const double dphi = 2.0 * std::numbers::pi / n_azimuthal;
  rule.nodes.reserve(static_cast<std::size_t>(n_radial) * n_polar * n_azimuthal);
  rule.weights.reserve(rule.nodes.capacity());
  for (int i = 0; i < n_radial; ++i) {
    const double r = 0.5 * R * (radial.nodes[i] + 1.0);
    const double wr = 0.5 * R * radial.weights[i] * r * r;
    for (int j = 0; j < n_polar; ++j) {
      const double ct = polar.nodes[j];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double wrt = wr * polar.weights[j];
      for (int k = 0; k < n_azimuthal; ++k) {
        const double phi = (k + 0.5) * dphi;
        rule.nodes.push_back(ball.center +
                             Vec3{r * st * std::cos(phi), r * st * std::sin(phi), r * ct});
        rule.weights.push_back(wrt * dphi);
      }
    }
  }
  return rule;
}

}  // namespace velavg
