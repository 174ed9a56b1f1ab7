#pragma once

#include <cmath>
#include <cstdint>

#include "velavg/numerics/vec3.hpp"

namespace velavg {

/// Unit 4-vector (e', e) with |e|^2 + e'^2 = 1.
struct Direction4 {
  double e_prime = 1.0;
  Vec3 e;

  /// | |e|^2 + e'^2 - 1 |
  double norm_defect() const { return std::fabs(norm2(e) + e_prime * e_prime - 1.0); }
};

/// Normalizes (e', e); throws std::invalid_argument for the zero vector.
Direction4 make_direction(double e_prime, const Vec3& e);

/// Point `index` of a uniform stream on S^3 (normalized Gaussian 4-vectors).
Direction4 sample_direction4(std::uint64_t seed, std::uint64_t index = 0);

/// max(8 pi R^3 / 3, 16 R (1 + R^2)^(3/2)). Throws for R <= 0.
double c_r(double R);

/// (-R eps + sqrt(R^2 + 1 - eps)) / (R^2 + 1): lower bound on |e| for
/// directions whose slice set is nonempty, eps < 1/2.
double ep4_lower_bound(double R, double eps);

}  // namespace velavg
