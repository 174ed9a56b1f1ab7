#pragma once

#include <cstdint>
#include <string>

#include "velavg/kinetic/average.hpp"
#include "velavg/numerics/sobol.hpp"

namespace velavg {

/// paper:     numerator |du|^2, outer power 1/p.
/// gagliardo: numerator |du|^p, outer power 1/p.
/// Both use the kernel |y1 - y2|^-(4 + s p).
enum class SeminormVariant { paper, gagliardo };

std::string to_string(SeminormVariant v);
SeminormVariant parse_seminorm_variant(const std::string& name);

struct SeminormEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  SeminormVariant variant = SeminormVariant::paper;
  double s = 0.0;
  double p_exp = 2.0;
  // Diagnostics, all on the double integral before the outer root.
  double integral = 0.0;
  double integral_std_error = 0.0;
  double tail = 0.0;        // analytic contribution of |y1 - y2| > diameter
  double bias_bound = 0.0;  // bound on the |y1 - y2| < r_min part (below grid resolution)
  double r_min = 0.0;
};

/// 0 < s < min(1/p, 1 - 1/p), plus the Hilbert endpoint (s, p) = (1/2, 2).
bool gagliardo_admissible(double s, double p_exp);

/// Monte Carlo estimate of the double integral over R^4 x R^4 of the
/// zero-extended, multilinearly interpolated grid.
///
/// The sampler must be 8-dimensional: 4 coordinates place y1 uniformly in
/// the grid box, 3 pick a uniform direction on S^3 and 1 draws the offset
/// radius from a density proportional to 1/r on [r_min, diameter] and flat
/// below r_min (half the smallest grid step). Pairs leaving the box count twice
/// (the mirrored pair is never drawn), and offsets beyond the diameter are
/// added in closed form. Throws std::invalid_argument for inadmissible (s, p).
SeminormEstimate gagliardo_mc(const AverageGrid4& grid, double s, double p_exp,
                              SeminormVariant variant, const SamplerSpec& sampler,
                              const Exec& exec = {});

/// Multilinear interpolation of the grid at (t, x), zero outside the box.
double interpolate(const AverageGrid4& grid, const std::array<double, 4>& y);

}  // namespace velavg
