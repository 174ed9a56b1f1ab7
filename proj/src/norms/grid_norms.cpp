#include "velavg/norms/grid_norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace velavg {

namespace {

double trapezoid_weight(const GridSpec& g, int i, int j, int k, int l) {
  double w = 1.0;
  if (i == 0 || i == g.n[0] - 1) w *= 0.5;
  if (j == 0 || j == g.n[1] - 1) w *= 0.5;
  if (k == 0 || k == g.n[2] - 1) w *= 0.5;
  if (l == 0 || l == g.n[3] - 1) w *= 0.5;
  return w;
}

template <class Fn>
double trapezoid_sum(const AverageGrid4& a, Fn&& fn) {
  const GridSpec& g = a.grid;
  double total = 0.0;
  for (int i = 0; i < g.n[0]; ++i)
    for (int j = 0; j < g.n[1]; ++j)
      for (int k = 0; k < g.n[2]; ++k)
        for (int l = 0; l < g.n[3]; ++l) {
          total += trapezoid_weight(g, i, j, k, l) * fn(i, j, k, l);
        }
  return total * g.cell_volume();
}

double abs_pow(double v, double m) {
  const double a = std::fabs(v);
  if (m == 1.0) return a;
  if (m == 2.0) return a * a;
  return std::pow(a, m);
}

}  // namespace

double power_integral(const AverageGrid4& grid, double m) {
  return trapezoid_sum(grid, [&](int i, int j, int k, int l) {
    return abs_pow(grid.at(i, j, k, l), m);
  });
}

double lq_norm_avg(const AverageGrid4& grid, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm_avg: q must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : grid.values) m = std::max(m, std::fabs(v));
    return m;
  }
  const double integral = power_integral(grid, q);
  return q == 1.0 ? integral : std::pow(integral, 1.0 / q);
}

double discrete_l2_squared(const AverageGrid4& grid) {
  double s = 0.0;
  for (double v : grid.values) s += v * v;
  return s * grid.grid.cell_volume();
}

double gradient_power_integral(const AverageGrid4& grid, double m) {
  const GridSpec& g = grid.grid;
  std::array<double, 4> h{};
  for (int a = 0; a < 4; ++a) h[a] = g.step(a);
  return trapezoid_sum(grid, [&](int i, int j, int k, int l) {
    const std::array<int, 4> idx{i, j, k, l};
    double g2 = 0.0;
    for (int a = 0; a < 4; ++a) {
      std::array<int, 4> lo = idx, hi = idx;
      lo[a] = std::max(0, idx[a] - 1);
      hi[a] = std::min(g.n[a] - 1, idx[a] + 1);
      const double d = (grid.at(hi[0], hi[1], hi[2], hi[3]) - grid.at(lo[0], lo[1], lo[2], lo[3])) /
                       ((hi[a] - lo[a]) * h[a]);
      g2 += d * d;
    }
    return std::pow(g2, 0.5 * m);
  });
}

}  // namespace velavg
