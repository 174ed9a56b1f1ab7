#include "velavg/bounds/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "velavg/geometry/direction.hpp"

namespace velavg {

namespace {

void require_positive(double T, double R) {
  if (!(T > 0.0)) throw std::invalid_argument("constants: T must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("constants: R must be positive");
}

double ball_volume(double R) { return 4.0 * std::numbers::pi * R * R * R / 3.0; }

}  // namespace

ConstantsRegistry constants(double T, double R, double q) {
  require_positive(T, R);
  if (!(q > 1.0) || std::isinf(q)) {
    throw std::invalid_argument("constants: C1 and C2 need 1 < q < inf");
  }
  ConstantsRegistry c;
  c.T = T;
  c.R = R;
  c.q = q;
  const double r = (q - 1.0) / q;
  const double holder = std::pow(r, r);
  c.C1 = holder * (1.0 - std::exp(-T));
  c.C2 = std::pow(ball_volume(R), 1.0 - 1.0 / q) * std::pow(T, 1.0 / q) * holder;
  c.C3 = T;
  c.C4 = ball_volume(R) * T;
  c.C_R = c_r(R);
  c.C5 = std::sqrt(6.0) * std::sqrt(1.0 + 0.5 * T) * std::sqrt(c.C_R);
  c.C6 = std::max({ball_volume(R), T, c.C4, c.C5});
  return c;
}

double lq_constant(double T, double R, double q) {
  require_positive(T, R);
  if (!(q >= 1.0)) throw std::invalid_argument("lq_constant: q must be >= 1");
  if (q == 1.0) return T;
  if (std::isinf(q)) return ball_volume(R) * T;
  return constants(T, R, q).C2;
}

}  // namespace velavg
