#include "velavg/bounds/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace velavg {

InterpolationExponents interpolation_params(double q, double theta) {
  if (!(q >= 1.0)) throw std::invalid_argument("interpolation_params: q must be >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("interpolation_params: theta must lie in [0, 1]");
  }
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_p = (1.0 - theta) * inv_q + 0.5 * theta;
  return {1.0 / inv_p, 0.5 * theta};
}

OpenInterval admissible_s(double p_exp) {
  if (!(p_exp > 1.0) || std::isinf(p_exp)) {
    throw std::invalid_argument("admissible_s: p must lie in (1, inf)");
  }
  return {0.0, std::min(1.0 / p_exp, 1.0 - 1.0 / p_exp)};
}

}  // namespace velavg
