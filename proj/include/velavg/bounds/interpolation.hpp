#pragma once

namespace velavg {

struct InterpolationExponents {
  double p_exp = 2.0;
  double s = 0.5;
};

/// Complex interpolation between L^q and H^(1/2):
/// 1/p = (1 - theta)/q + theta/2, s = theta/2. q may be infinity.
/// Throws for q < 1 or theta outside [0, 1].
InterpolationExponents interpolation_params(double q, double theta);

/// Open interval (lo, hi).
struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v > lo && v < hi; }
};

/// (0, min(1/p, 1 - 1/p)). Throws for p outside (1, inf).
OpenInterval admissible_s(double p_exp);

}  // namespace velavg
