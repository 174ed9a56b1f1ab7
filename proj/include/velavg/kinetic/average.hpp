#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "velavg/kinetic/duhamel.hpp"
#include "velavg/kinetic/field.hpp"
#include "velavg/numerics/parallel.hpp"
#include "velavg/numerics/quadrature.hpp"

namespace velavg {

/// Quadrature approximation of int_{B} u(t, x, p) dp over the rule's ball.
double momentum_average(const ScalarField7& u, double t, const Vec3& x, const BallRule& rule);

/// Uniform (t, x1, x2, x3) node layout. Axis k has n[k] nodes including both
/// endpoints of its interval.
struct GridSpec {
  Interval t_axis;
  Box3 x_box;
  std::array<int, 4> n{8, 8, 8, 8};

  double step(int axis) const;
  double coord(int axis, int index) const;
  std::size_t size() const;
  /// Product of the four steps.
  double cell_volume() const;
};

/// Grid on [0, T] x (support box dilated by T, plus one cell per side).
GridSpec grid_for(const ScalarField7& f, int nt, int nx);

/// Throws std::invalid_argument if an axis has fewer than 8 nodes, the time
/// axis misses part of [0, T] or (with check_box) the box misses part of f's
/// x box dilated by T.
void validate_grid(const GridSpec& grid, const ScalarField7& f, bool check_box = true);

/// Sampled momentum average, row-major in (t, x1, x2, x3).
struct AverageGrid4 {
  GridSpec grid;
  std::vector<double> values;
  std::string metadata;  // free-form provenance: rules, options

  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * grid.n[1] + j) * grid.n[2] + k) * grid.n[3] + l;
  }
  double& at(int i, int j, int k, int l) { return values[index(i, j, k, l)]; }
  double at(int i, int j, int k, int l) const { return values[index(i, j, k, l)]; }
};

AverageGrid4 zero_grid(const GridSpec& grid);

/// Defaults trade the per-point rules for grid-wide throughput: order 10 x 24
/// panels keeps the t = T face below 1e-9 of the peak for bump sources.
struct MaterializeOptions {
  DuhamelOptions duhamel{false, 10, 24};
  int n_radial = 6;
  int n_polar = 6;
  int n_azimuthal = 12;
  /// When false, only the node counts and the time axis are validated; the
  /// caller then relies on the x box containing the solution's support.
  bool require_dilated_box = true;
  Exec exec;
};

/// Ball rule used by materialize_average: built on f's tightest momentum ball.
BallRule materialization_rule(const ScalarField7& f, const MaterializeOptions& options);

/// values[i,j,k,l] = momentum_average(duhamel_solve(f), t_i, x_jkl).
AverageGrid4 materialize_average(const ScalarField7& f, const GridSpec& grid,
                                 const MaterializeOptions& options = {});

}  // namespace velavg
