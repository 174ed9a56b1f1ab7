#include "velavg/norms/symbol.hpp"

#include <cmath>
#include <stdexcept>

#include "velavg/kinetic/kinematics.hpp"
#include "velavg/norms/phase_norms.hpp"

namespace velavg {

SymbolCheck symbol_weighted_l2(const ScalarField7& f, const ScalarField7& u,
                               const SamplerSpec& sampler, double h_fd, const Exec& exec) {
  if (sampler.dimension != 7) throw std::invalid_argument("symbol_weighted_l2: sampler dimension must be 7");
  if (!(h_fd > 0.0)) throw std::invalid_argument("symbol_weighted_l2: h_fd must be positive");
  const PointStream stream = sobol_stream(sampler);
  const PhaseRegion region = phase_region(f);
  const double vol = region.volume();
  const double inv = 0.5 / h_fd;
  const auto sums = shift_sums<2>(
      stream, exec,
      [&](std::span<const double> pt) {
        double t;
        Vec3 x, p;
        region.map(pt, t, x, p);
        const double fv = f(t, x, p);
        const Vec3 v = velocity(p);
        // Directional difference along the characteristic (1, v).
        const double lu = (u(t + h_fd, x + h_fd * v, p) - u(t - h_fd, x - h_fd * v, p)) * inv;
        return std::array<double, 2>{fv * fv, lu * lu};
      },
      256);
  SymbolCheck out;
  out.n_samples = sampler.points_per_shift() * sampler.n_shifts;
  const double n = static_cast<double>(sampler.points_per_shift());
  std::vector<double> a, b, d;
  for (const auto& s : sums) {
    const double fa = std::sqrt(vol * s[0] / n);
    const double fb = std::sqrt(vol * s[1] / n);
    a.push_back(fa);
    b.push_back(fb);
    d.push_back(fa - fb);
  }
  const Estimate ea = combine_shifts(a, out.n_samples);
  const Estimate eb = combine_shifts(b, out.n_samples);
  out.lhs = ea.value;
  out.rhs = eb.value;
  out.lhs_std_error = ea.std_error;
  out.rhs_std_error = eb.std_error;
  out.diff_std_error = combine_shifts(d, out.n_samples).std_error;
  return out;
}

}  // namespace velavg
