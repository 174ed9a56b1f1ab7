#include "velavg/kinetic/average.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace velavg {

double momentum_average(const ScalarField7& u, double t, const Vec3& x, const BallRule& rule) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * u(t, x, rule.nodes[i]);
  return sum;
}

double GridSpec::step(int axis) const {
  const double len = axis == 0 ? t_axis.length() : x_box.hi[axis - 1] - x_box.lo[axis - 1];
  return len / (n[axis] - 1);
}

double GridSpec::coord(int axis, int index) const {
  const double lo = axis == 0 ? t_axis.lo : x_box.lo[axis - 1];
  return lo + index * step(axis);
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int k : n) s *= static_cast<std::size_t>(k);
  return s;
}

double GridSpec::cell_volume() const { return step(0) * step(1) * step(2) * step(3); }

GridSpec grid_for(const ScalarField7& f, int nt, int nx) {
  if (nt < 8 || nx < 8) throw std::invalid_argument("grid: need at least 8 nodes per axis");
  const SupportBox& s = f.support();
  GridSpec g;
  g.t_axis = {0.0, s.horizon};
  g.n = {nt, nx, nx, nx};
  // n-1 cells span L + 2T + 2h, hence h = (L + 2T) / (n - 3) per axis.
  for (int a = 0; a < 3; ++a) {
    const double len = s.x.hi[a] - s.x.lo[a];
    const double h = (len + 2.0 * s.horizon) / (nx - 3);
    g.x_box.lo[a] = s.x.lo[a] - s.horizon - h;
    g.x_box.hi[a] = s.x.hi[a] + s.horizon + h;
  }
  return g;
}

void validate_grid(const GridSpec& grid, const ScalarField7& f, bool check_box) {
  for (int k : grid.n) {
    if (k < 8) throw std::invalid_argument("grid: need at least 8 nodes per axis");
  }
  const SupportBox& s = f.support();
  if (grid.t_axis.lo > 0.0 || grid.t_axis.hi < s.horizon) {
    throw std::invalid_argument("grid: time axis must cover [0, T]");
  }
  if (!check_box) return;
  const Box3 need = s.x.dilated(s.horizon);
  for (int a = 0; a < 3; ++a) {
    if (grid.x_box.lo[a] > need.lo[a] || grid.x_box.hi[a] < need.hi[a]) {
      throw std::invalid_argument("grid: x box must contain the support box dilated by T");
    }
  }
}

AverageGrid4 zero_grid(const GridSpec& grid) {
  AverageGrid4 out;
  out.grid = grid;
  out.values.assign(grid.size(), 0.0);
  return out;
}

BallRule materialization_rule(const ScalarField7& f, const MaterializeOptions& options) {
  return make_ball_rule(f.momentum_ball(), options.n_radial, options.n_polar,
                        options.n_azimuthal);
}

AverageGrid4 materialize_average(const ScalarField7& f, const GridSpec& grid,
                                 const MaterializeOptions& options) {
  validate_grid(grid, f, options.require_dilated_box);
  const ScalarField7 u = duhamel_solve(f, options.duhamel);
  const BallRule rule = materialization_rule(f, options);

  AverageGrid4 out = zero_grid(grid);
  std::ostringstream meta;
  meta << "duhamel=" << (options.duhamel.damped ? "damped" : "undamped")
       << " gauss-legendre order=" << options.duhamel.quad_order
       << " panels=" << options.duhamel.panels << "; ball=" << rule.description();
  out.metadata = meta.str();

  const std::optional<Ball3> reach = u.hints().x;
  const Interval active = u.time_window();
  // One job per (t, x1) line keeps scheduling overhead negligible.
  const std::size_t lines = static_cast<std::size_t>(grid.n[0]) * grid.n[1];
  parallel_for(
      lines, options.exec,
      [&](std::size_t line) {
        const int i = static_cast<int>(line / grid.n[1]);
        const int j = static_cast<int>(line % grid.n[1]);
        const double t = grid.coord(0, i);
        if (!active.contains(t)) return;
        for (int k = 0; k < grid.n[2]; ++k) {
          for (int l = 0; l < grid.n[3]; ++l) {
            const Vec3 x{grid.coord(1, j), grid.coord(2, k), grid.coord(3, l)};
            // u vanishes identically off its reach ball; skipping is exact.
            if (reach && !reach->contains(x)) continue;
            out.at(i, j, k, l) = momentum_average(u, t, x, rule);
          }
        }
      },
      1);
  return out;
}

}  // namespace velavg
