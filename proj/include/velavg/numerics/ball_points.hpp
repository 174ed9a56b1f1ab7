#pragma once

#include <cstdint>
#include <vector>

#include "velavg/numerics/parallel.hpp"
#include "velavg/numerics/vec3.hpp"

namespace velavg {

/// Point `index` of the uniform stream on B_R: rejection from [-R, R]^3 with
/// attempts keyed by (seed, index, attempt).
Vec3 ball_point(double R, std::uint64_t seed, std::uint64_t index);

/// n uniform points in the closed ball of radius R.
std::vector<Vec3> ball_points(double R, std::size_t n, std::uint64_t seed,
                              const Exec& exec = {});

}  // namespace velavg
