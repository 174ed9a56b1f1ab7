#pragma once

#include <array>
#include <complex>
#include <vector>

#include "velavg/kinetic/average.hpp"

namespace velavg {

/// Half spectrum of a zero-padded AverageGrid4.
///
/// coeffs approximate the continuous transform
///   u^(tau, z) = (2 pi)^-2 int e^{-i tau t - i x.z} u(t, x) dt dx
/// on the frequency lattice 2 pi k / (n h) of the padded grid. Only the last
/// axis is halved (k3 in [0, n3/2]); `multiplicity` restores the other half
/// in sums over |u^|^2.
struct SpectralGrid4 {
  GridSpec source;
  int pad = 2;
  std::array<int, 4> n{};  // padded real sizes
  std::array<double, 4> step{};
  std::array<double, 4> origin{};
  std::vector<std::complex<double>> coeffs;

  int half() const { return n[3] / 2 + 1; }
  std::size_t index(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n[1] + j) * n[2] + k) * half() + l;
  }
  /// Signed angular frequency of index k on `axis`.
  double frequency(int axis, int k) const;
  double multiplicity(int l) const { return (l == 0 || 2 * l == n[3]) ? 1.0 : 2.0; }
  /// Frequency cell volume d tau dz^3.
  double cell_volume() const;
};

/// Throws std::invalid_argument if |values| on the outer layer exceeds 1e-8
/// of max |values| (the transform would see a wrapped-around jump).
SpectralGrid4 fft4(const AverageGrid4& grid, int pad = 2);

/// Inverse of fft4, cropped back to the source grid.
AverageGrid4 ifft4(const SpectralGrid4& spec);

/// sum |u^|^2 d tau dz^3 over the full spectrum.
double spectral_l2_squared(const SpectralGrid4& spec);

/// (sum (tau^2 + |z|^2)^s |u^|^2 d tau dz^3)^(1/2). Throws for s outside [0, 1].
double hs_norm_fourier(const SpectralGrid4& spec, double s);

/// Largest outer-layer |value| divided by max |value| (0 for a zero grid).
double boundary_ratio(const AverageGrid4& grid);

}  // namespace velavg
