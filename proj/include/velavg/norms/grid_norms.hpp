#pragma once

#include "velavg/kinetic/average.hpp"

namespace velavg {

/// Trapezoid-rule L^q norm of the sampled average over its grid box;
/// q = infinity returns max |values|. Throws std::invalid_argument for q < 1.
double lq_norm_avg(const AverageGrid4& grid, double q);

/// Trapezoid-rule integral of |values|^m.
double power_integral(const AverageGrid4& grid, double m);

/// Riemann sum of values^2 times the cell volume (the discrete L^2 norm
/// squared that the FFT preserves).
double discrete_l2_squared(const AverageGrid4& grid);

/// Trapezoid-rule integral of |grad values|^m, with centered differences in
/// the interior and one-sided differences on the boundary.
double gradient_power_integral(const AverageGrid4& grid, double m);

}  // namespace velavg
