#include "velavg/numerics/ball_points.hpp"

#include <stdexcept>

#include "velavg/numerics/rng.hpp"

namespace velavg {

Vec3 ball_point(double R, std::uint64_t seed, std::uint64_t index) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t base = attempt * 3;
    const Vec3 q{2.0 * counter_uniform(seed, index, base) - 1.0,
                 2.0 * counter_uniform(seed, index, base + 1) - 1.0,
                 2.0 * counter_uniform(seed, index, base + 2) - 1.0};
    if (norm2(q) <= 1.0) return R * q;
  }
}

std::vector<Vec3> ball_points(double R, std::size_t n, std::uint64_t seed,
                              const Exec& exec) {
  if (!(R > 0.0)) throw std::invalid_argument("ball_points: R must be positive");
  return parallel_map<Vec3>(
      n, exec, [&](std::size_t i) { return ball_point(R, seed, i); }, 4096);
}

}  // namespace velavg
