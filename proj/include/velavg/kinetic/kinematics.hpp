#pragma once

#include <cmath>

#include "velavg/numerics/vec3.hpp"

namespace velavg {

/// Dimensionless relativistic energy sqrt(1 + |p|^2).
inline double energy(const Vec3& p) { return std::sqrt(1.0 + norm2(p)); }

/// Characteristic velocity p / p0; its magnitude is strictly below 1.
inline Vec3 velocity(const Vec3& p) { return (1.0 / energy(p)) * p; }

/// Position reached along the free-transport characteristic after time dt.
inline Vec3 characteristic_shift(const Vec3& x, const Vec3& p, double dt) {
  return x + dt * velocity(p);
}

/// Largest speed |p|/p0 attained on a ball of momentum radius r.
inline double max_speed(double momentum_radius) {
  return momentum_radius / std::sqrt(1.0 + momentum_radius * momentum_radius);
}

}  // namespace velavg
