#pragma once

#include <functional>
#include <string>
#include <vector>

#include "velavg/numerics/shapes.hpp"
#include "velavg/numerics/vec3.hpp"

namespace velavg {

enum class QuadratureKind { gauss_legendre, trapezoid, spherical_product, adaptive };

std::string to_string(QuadratureKind kind);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Newton iteration on the Legendre recurrence; exact for degree <= 2n-1.
GaussLegendre gauss_legendre(int order);

/// Composite rule: `panels` equal panels on [a, b], `rule` on each.
template <class F>
double integrate_composite(F&& f, double a, double b, int panels,
                           const GaussLegendre& rule) {
  const double width = (b - a) / panels;
  const double half = 0.5 * width;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * width;
    double panel = 0.0;
    for (int i = 0; i < rule.order(); ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += half * panel;
  }
  return total;
}

/// Globally adaptive Gauss-Kronrod (7/15) integration to an absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double* error_estimate = nullptr);

/// Spherical product rule on a ball: radial Gauss-Legendre (r^2 weight folded
/// in), Gauss-Legendre in cos(theta), trapezoid in phi.
struct BallRule {
  Ball3 ball;
  int n_radial = 0;
  int n_polar = 0;
  int n_azimuthal = 0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  std::string description() const;
};

BallRule make_ball_rule(const Ball3& ball, int n_radial = 32, int n_polar = 32,
                        int n_azimuthal = 64);

}  // namespace velavg
