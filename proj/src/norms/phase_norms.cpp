#include "velavg/norms/phase_norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace velavg {

double PhaseRegion::volume() const {
  return t.length() * x.volume() * 4.0 * std::numbers::pi * std::pow(p.radius, 3) / 3.0;
}

void PhaseRegion::map(std::span<const double> u, double& t_out, Vec3& x_out, Vec3& p_out) const {
  t_out = t.lo + t.length() * u[0];
  for (int i = 0; i < 3; ++i) x_out[i] = x.lo[i] + (x.hi[i] - x.lo[i]) * u[1 + i];
  const double r = p.radius * std::cbrt(u[4]);
  const double z = 2.0 * u[5] - 1.0;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * std::numbers::pi * u[6];
  p_out = p.center + r * Vec3{rho * std::cos(phi), rho * std::sin(phi), z};
}

PhaseRegion phase_region(const ScalarField7& g) {
  return PhaseRegion{g.time_window(), g.spatial_box(), g.momentum_ball()};
}

namespace {

void require_dim7(const SamplerSpec& sampler) {
  if (sampler.dimension != 7) {
    throw std::invalid_argument("phase-space sampler must have dimension 7");
  }
}

}  // namespace

Estimate lp_norm_phase(const ScalarField7& g, double p_exp, const SamplerSpec& sampler,
                       const Exec& exec) {
  if (!(p_exp >= 1.0) || std::isinf(p_exp)) {
    throw std::invalid_argument("lp_norm_phase: p_exp must lie in [1, inf)");
  }
  require_dim7(sampler);
  const PointStream stream = sobol_stream(sampler);
  const PhaseRegion region = phase_region(g);
  const double vol = region.volume();
  const auto sums = shift_sums<1>(stream, exec, [&](std::span<const double> u) {
    double t;
    Vec3 x, p;
    region.map(u, t, x, p);
    const double v = std::fabs(g(t, x, p));
    return std::array<double, 1>{p_exp == 2.0 ? v * v : std::pow(v, p_exp)};
  });
  std::vector<double> per_shift;
  const double n = static_cast<double>(sampler.points_per_shift());
  for (const auto& s : sums) per_shift.push_back(vol * s[0] / n);
  const Estimate integral =
      combine_shifts(per_shift, sampler.points_per_shift() * sampler.n_shifts);
  Estimate out;
  out.n_samples = integral.n_samples;
  if (integral.value <= 0.0) return out;
  out.value = std::pow(integral.value, 1.0 / p_exp);
  out.std_error = out.value / (p_exp * integral.value) * integral.std_error;
  return out;
}

Estimate sup_norm_phase(const ScalarField7& g, const SamplerSpec& sampler, const Exec& exec) {
  require_dim7(sampler);
  const PointStream stream = sobol_stream(sampler);
  const PhaseRegion region = phase_region(g);
  const SamplerSpec& spec = stream.spec();
  const std::uint64_t per = spec.points_per_shift();
  const std::uint64_t chunk = 4096;
  const std::uint64_t chunks = (per + chunk - 1) / chunk;
  const double peak = parallel_reduce(
      static_cast<std::size_t>(chunks * spec.n_shifts), exec, 0.0,
      [&](std::size_t job) {
        const unsigned shift = static_cast<unsigned>(job / chunks);
        const std::uint64_t begin = (job % chunks) * chunk;
        const std::uint64_t end = std::min(per, begin + chunk);
        std::vector<double> u(7);
        double m = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) {
          stream.point(shift, i, u);
          double t;
          Vec3 x, p;
          region.map(u, t, x, p);
          m = std::max(m, std::fabs(g(t, x, p)));
        }
        return m;
      },
      [](double a, double b) { return std::max(a, b); });
  return Estimate{peak, 0.0, per * spec.n_shifts};
}

}  // namespace velavg
