#include "velavg/geometry/direction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "velavg/numerics/rng.hpp"

namespace velavg {

Direction4 make_direction(double e_prime, const Vec3& e) {
  const double n = std::sqrt(e_prime * e_prime + norm2(e));
  if (!(n > 0.0)) throw std::invalid_argument("direction: zero vector");
  return Direction4{e_prime / n, (1.0 / n) * e};
}

Direction4 sample_direction4(std::uint64_t seed, std::uint64_t index) {
  CounterStream rng(seed, 0xD14EC7ULL + (index << 8));
  for (;;) {
    const double a = rng.normal();
    const Vec3 e{rng.normal(), rng.normal(), rng.normal()};
    if (a * a + norm2(e) > 1e-20) return make_direction(a, e);
  }
}

double c_r(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("c_r: R must be positive");
  const double ball = 8.0 * std::numbers::pi * R * R * R / 3.0;
  const double slab = 16.0 * R * std::pow(1.0 + R * R, 1.5);
  return std::max(ball, slab);
}

double ep4_lower_bound(double R, double eps) {
  return (-R * eps + std::sqrt(R * R + 1.0 - eps)) / (R * R + 1.0);
}

}  // namespace velavg
