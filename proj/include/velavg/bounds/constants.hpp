#pragma once

namespace velavg {

/// Closed-form constants of the L^q chain and the main estimate.
///
/// C1 = ((q-1)/q)^((q-1)/q) (1 - e^-T)
/// C2 = (4 pi R^3 / 3)^(1 - 1/q) T^(1/q) ((q-1)/q)^((q-1)/q)
/// C3 = T,  C4 = 4 pi R^3 T / 3
/// C5 = sqrt(6) (1 + T/2)^(1/2) C_R^(1/2)
/// C6 = max(4 pi R^3 / 3, T, C4, C5)
struct ConstantsRegistry {
  double T = 1.0;
  double R = 1.0;
  double q = 2.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double C3 = 0.0;
  double C4 = 0.0;
  double C5 = 0.0;
  double C6 = 0.0;
  double C_R = 0.0;
};

/// Throws std::invalid_argument unless T > 0, R > 0 and 1 < q < inf (C1 and
/// C2 come from Hoelder with the conjugate exponent).
ConstantsRegistry constants(double T, double R, double q);

/// Constant of the L^q bound for the damped average: C3 for q = 1, C2 for
/// 1 < q < inf, C4 for q = inf.
double lq_constant(double T, double R, double q);

}  // namespace velavg
