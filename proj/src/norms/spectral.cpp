#include "velavg/norms/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace velavg {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_array(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (!p) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwFree>(p);
}

// Phase factor e^{-i xi.o} and (2 pi)^-2 h^4 scaling for one coefficient.
std::complex<double> shift_factor(const SpectralGrid4& s, int i, int j, int k, int l) {
  const double phase = s.frequency(0, i) * s.origin[0] + s.frequency(1, j) * s.origin[1] +
                       s.frequency(2, k) * s.origin[2] + s.frequency(3, l) * s.origin[3];
  return std::polar(1.0, -phase);
}

}  // namespace

double SpectralGrid4::frequency(int axis, int k) const {
  const int m = (axis < 3 && 2 * k > n[axis]) ? k - n[axis] : k;
  return 2.0 * std::numbers::pi * m / (n[axis] * step[axis]);
}

double SpectralGrid4::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < 4; ++a) v *= 2.0 * std::numbers::pi / (n[a] * step[a]);
  return v;
}

double boundary_ratio(const AverageGrid4& a) {
  const auto& n = a.grid.n;
  double peak = 0.0;
  for (double v : a.values) peak = std::max(peak, std::fabs(v));
  if (peak == 0.0) return 0.0;
  double edge = 0.0;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k)
        for (int l = 0; l < n[3]; ++l) {
          if (i == 0 || i == n[0] - 1 || j == 0 || j == n[1] - 1 || k == 0 || k == n[2] - 1 ||
              l == 0 || l == n[3] - 1) {
            edge = std::max(edge, std::fabs(a.at(i, j, k, l)));
          }
        }
  return edge / peak;
}

SpectralGrid4 fft4(const AverageGrid4& grid, int pad) {
  if (pad < 1) throw std::invalid_argument("fft4: pad factor must be >= 1");
  const double ratio = boundary_ratio(grid);
  if (ratio > 1e-8) {
    std::ostringstream msg;
    msg << "fft4: grid does not vanish on its boundary layer (edge/peak ratio " << ratio << ")";
    throw std::invalid_argument(msg.str());
  }
  SpectralGrid4 s;
  s.source = grid.grid;
  s.pad = pad;
  for (int a = 0; a < 4; ++a) {
    s.n[a] = pad * grid.grid.n[a];
    s.step[a] = grid.grid.step(a);
  }
  s.origin = {grid.grid.t_axis.lo, grid.grid.x_box.lo[0], grid.grid.x_box.lo[1],
              grid.grid.x_box.lo[2]};

  const std::size_t nreal = static_cast<std::size_t>(s.n[0]) * s.n[1] * s.n[2] * s.n[3];
  const std::size_t ncplx = static_cast<std::size_t>(s.n[0]) * s.n[1] * s.n[2] * s.half();
  auto in = fftw_array<double>(nreal);
  auto out = fftw_array<fftw_complex>(ncplx);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c(4, s.n.data(), in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::fill(in.get(), in.get() + nreal, 0.0);
  const auto& gn = grid.grid.n;
  for (int i = 0; i < gn[0]; ++i)
    for (int j = 0; j < gn[1]; ++j)
      for (int k = 0; k < gn[2]; ++k)
        for (int l = 0; l < gn[3]; ++l) {
          in[((static_cast<std::size_t>(i) * s.n[1] + j) * s.n[2] + k) * s.n[3] + l] =
              grid.at(i, j, k, l);
        }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double scale = s.step[0] * s.step[1] * s.step[2] * s.step[3] /
                       (4.0 * std::numbers::pi * std::numbers::pi);
  s.coeffs.resize(ncplx);
  for (int i = 0; i < s.n[0]; ++i)
    for (int j = 0; j < s.n[1]; ++j)
      for (int k = 0; k < s.n[2]; ++k)
        for (int l = 0; l < s.half(); ++l) {
          const std::size_t idx = s.index(i, j, k, l);
          const std::complex<double> raw(out[idx][0], out[idx][1]);
          s.coeffs[idx] = scale * shift_factor(s, i, j, k, l) * raw;
        }
  return s;
}

AverageGrid4 ifft4(const SpectralGrid4& s) {
  const std::size_t nreal = static_cast<std::size_t>(s.n[0]) * s.n[1] * s.n[2] * s.n[3];
  const std::size_t ncplx = s.coeffs.size();
  auto in = fftw_array<fftw_complex>(ncplx);
  auto out = fftw_array<double>(nreal);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_c2r(4, s.n.data(), in.get(), out.get(), FFTW_ESTIMATE);
  }
  const double scale = 4.0 * std::numbers::pi * std::numbers::pi /
                       (s.step[0] * s.step[1] * s.step[2] * s.step[3] * static_cast<double>(nreal));
  for (int i = 0; i < s.n[0]; ++i)
    for (int j = 0; j < s.n[1]; ++j)
      for (int k = 0; k < s.n[2]; ++k)
        for (int l = 0; l < s.half(); ++l) {
          const std::size_t idx = s.index(i, j, k, l);
          const std::complex<double> c = scale * std::conj(shift_factor(s, i, j, k, l)) * s.coeffs[idx];
          in[idx][0] = c.real();
          in[idx][1] = c.imag();
        }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  AverageGrid4 g = zero_grid(s.source);
  const auto& gn = s.source.n;
  for (int i = 0; i < gn[0]; ++i)
    for (int j = 0; j < gn[1]; ++j)
      for (int k = 0; k < gn[2]; ++k)
        for (int l = 0; l < gn[3]; ++l) {
          g.at(i, j, k, l) = out[((static_cast<std::size_t>(i) * s.n[1] + j) * s.n[2] + k) * s.n[3] + l];
        }
  return g;
}

namespace {

template <class Weight>
double weighted_sum(const SpectralGrid4& s, Weight&& w) {
  double total = 0.0;
  for (int i = 0; i < s.n[0]; ++i) {
    const double tau = s.frequency(0, i);
    for (int j = 0; j < s.n[1]; ++j) {
      const double z1 = s.frequency(1, j);
      for (int k = 0; k < s.n[2]; ++k) {
        const double z2 = s.frequency(2, k);
        for (int l = 0; l < s.half(); ++l) {
          const double z3 = s.frequency(3, l);
          const double r2 = tau * tau + z1 * z1 + z2 * z2 + z3 * z3;
          total += s.multiplicity(l) * w(r2) * std::norm(s.coeffs[s.index(i, j, k, l)]);
        }
      }
    }
  }
  return total * s.cell_volume();
}

}  // namespace

double spectral_l2_squared(const SpectralGrid4& s) {
  return weighted_sum(s, [](double) { return 1.0; });
}

double hs_norm_fourier(const SpectralGrid4& s, double sexp) {
  if (!(sexp >= 0.0 && sexp <= 1.0)) {
    throw std::invalid_argument("hs_norm_fourier: s must lie in [0, 1]");
  }
  if (sexp == 0.5) return std::sqrt(weighted_sum(s, [](double r2) { return std::sqrt(r2); }));
  return std::sqrt(weighted_sum(s, [sexp](double r2) { return std::pow(r2, sexp); }));
}

}  // namespace velavg
