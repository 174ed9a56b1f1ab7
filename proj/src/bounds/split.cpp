#include "velavg/bounds/split.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "velavg/geometry/direction.hpp"
#include "velavg/kinetic/duhamel.hpp"
#include "velavg/kinetic/kinematics.hpp"
#include "velavg/norms/spectral.hpp"

namespace velavg {

double SplitDiagnostic::partition_defect() const {
  if (unsplit == 0.0) return std::fabs(i1 + i2);
  return std::fabs(i1 + i2 - unsplit) / std::fabs(unsplit);
}

double split_bound(double alpha, double a_norm, double b_norm, double c_r) {
  if (!(alpha > 0.0)) throw std::invalid_argument("split_bound: alpha must be positive");
  return 2.0 * c_r * (alpha * a_norm + b_norm / alpha);
}

double optimal_alpha(double a_norm, double b_norm) {
  if (!(a_norm > 0.0) || !(b_norm > 0.0)) return 0.0;
  return std::sqrt(b_norm / a_norm);
}

namespace {

// One momentum node: sampled u(., ., p) on the grid, transformed.
SpectralGrid4 node_spectrum(const ScalarField7& u, const GridSpec& grid, const Vec3& p, int pad,
                            const Exec& exec) {
  AverageGrid4 g = zero_grid(grid);
  const std::size_t lines = static_cast<std::size_t>(grid.n[0]) * grid.n[1];
  parallel_for(
      lines, exec,
      [&](std::size_t line) {
        const int i = static_cast<int>(line / grid.n[1]);
        const int j = static_cast<int>(line % grid.n[1]);
        const double t = grid.coord(0, i);
        for (int k = 0; k < grid.n[2]; ++k) {
          for (int l = 0; l < grid.n[3]; ++l) {
            const Vec3 x{grid.coord(1, j), grid.coord(2, k), grid.coord(3, l)};
            g.at(i, j, k, l) = u(t, x, p);
          }
        }
      },
      1);
  return fft4(g, pad);
}

}  // namespace

SplitDiagnostic fourier_split_diag(const ScalarField7& f, const SplitOptions& options) {
  if (options.nt > 16 || options.nx > 16) {
    throw std::invalid_argument("fourier_split_diag: at most 16 nodes per grid axis");
  }
  const int nodes = options.n_radial * options.n_polar * options.n_azimuthal;
  if (nodes > 64) throw std::invalid_argument("fourier_split_diag: at most 64 momentum nodes");

  SplitDiagnostic d;
  d.grid = grid_for(f, options.nt, options.nx);
  validate_grid(d.grid, f);
  d.c_r = c_r(f.support().p_radius);
  const ScalarField7 u = duhamel_solve(f, options.duhamel);
  const BallRule rule =
      make_ball_rule(f.momentum_ball(), options.n_radial, options.n_polar, options.n_azimuthal);
  d.momentum_nodes = static_cast<int>(rule.size());

  std::vector<SpectralGrid4> spectra;
  spectra.reserve(rule.size());
  for (const Vec3& p : rule.nodes) {
    spectra.push_back(node_spectrum(u, d.grid, p, options.pad, options.exec));
  }
  const SpectralGrid4& s0 = spectra.front();
  const double dxi = s0.cell_volume();

  // A and B first: the default alpha depends on them.
  for (std::size_t m = 0; m < rule.size(); ++m) {
    const Vec3 v = velocity(rule.nodes[m]);
    const SpectralGrid4& s = spectra[m];
    double a = 0.0;
    double b = 0.0;
    for (int i = 0; i < s.n[0]; ++i)
      for (int j = 0; j < s.n[1]; ++j)
        for (int k = 0; k < s.n[2]; ++k)
          for (int l = 0; l < s.half(); ++l) {
            const double sym = s.frequency(0, i) + v[0] * s.frequency(1, j) +
                               v[1] * s.frequency(2, k) + v[2] * s.frequency(3, l);
            const double w = s.multiplicity(l) * std::norm(s.coeffs[s.index(i, j, k, l)]);
            a += w;
            b += w * sym * sym;
          }
    d.a_norm += rule.weights[m] * a * dxi;
    d.b_norm += rule.weights[m] * b * dxi;
  }
  d.alpha_opt = optimal_alpha(d.a_norm, d.b_norm);
  d.alpha = options.alpha > 0.0 ? options.alpha : d.alpha_opt;
  if (!(d.alpha > 0.0)) return d;  // zero data: everything vanishes

  for (int i = 0; i < s0.n[0]; ++i)
    for (int j = 0; j < s0.n[1]; ++j)
      for (int k = 0; k < s0.n[2]; ++k)
        for (int l = 0; l < s0.half(); ++l) {
          const double tau = s0.frequency(0, i);
          const Vec3 z{s0.frequency(1, j), s0.frequency(2, k), s0.frequency(3, l)};
          const std::size_t idx = s0.index(i, j, k, l);
          std::complex<double> near;
          std::complex<double> far;
          for (std::size_t m = 0; m < rule.size(); ++m) {
            const double sym = tau + dot(velocity(rule.nodes[m]), z);
            const std::complex<double> c = rule.weights[m] * spectra[m].coeffs[idx];
            if (std::fabs(sym) <= d.alpha) {
              near += c;
            } else {
              far += c;
            }
          }
          const double w = s0.multiplicity(l) * std::sqrt(tau * tau + norm2(z)) * dxi;
          d.i1 += w * std::norm(near);
          d.i2 += w * std::norm(far);
          d.cross += 2.0 * w * std::real(near * std::conj(far));
          d.unsplit += w * std::norm(near + far);
        }
  d.bound1 = d.c_r * d.alpha * d.a_norm;
  d.bound2 = 2.0 * d.c_r * d.b_norm / d.alpha;
  return d;
}

}  // namespace velavg
