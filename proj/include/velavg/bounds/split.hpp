#pragma once

#include "velavg/kinetic/average.hpp"

namespace velavg {

/// Resolution of the split diagnostic. Each momentum node gets its own
/// transform, so both the grid and the rule are capped.
struct SplitOptions {
  int nt = 12;
  int nx = 12;
  int pad = 2;
  int n_radial = 2;
  int n_polar = 4;
  int n_azimuthal = 4;
  double alpha = 0.0;  // <= 0: use optimal_alpha
  DuhamelOptions duhamel{false, 10, 24};
  Exec exec;
};

/// With a(xi) and b(xi) the momentum integrals of u^(xi, p) over the near
/// set |p.z/p0 + tau| <= alpha and its complement, and w = |xi|:
///   I1 = sum w |a|^2,  I2 = sum w |b|^2,  cross = sum 2 w Re(a conj b),
///   unsplit = sum w |a + b|^2 = I1 + I2 + cross,
///   A = int |u^|^2,  B = int |p.z/p0 + tau|^2 |u^|^2,
///   bound1 = C_R alpha A,  bound2 = (2 C_R / alpha) B.
struct SplitDiagnostic {
  double i1 = 0.0;
  double i2 = 0.0;
  double cross = 0.0;
  double unsplit = 0.0;
  double a_norm = 0.0;  // A
  double b_norm = 0.0;  // B
  double alpha = 0.0;
  double alpha_opt = 0.0;
  double c_r = 0.0;
  double bound1 = 0.0;
  double bound2 = 0.0;
  int momentum_nodes = 0;
  GridSpec grid;

  /// |I1 + I2 - unsplit| / unsplit (0 when unsplit is 0).
  double partition_defect() const;
};

/// 2 C_R (alpha A + B / alpha), the bracketed combined bound.
double split_bound(double alpha, double a_norm, double b_norm, double c_r);

/// sqrt(B / A), the minimizer of split_bound; 0 when A or B vanishes.
double optimal_alpha(double a_norm, double b_norm);

/// Throws std::invalid_argument above 16 nodes per grid axis or 64 momentum
/// nodes, and (through fft4) when u does not vanish on the grid boundary.
SplitDiagnostic fourier_split_diag(const ScalarField7& f, const SplitOptions& options = {});

}  // namespace velavg
