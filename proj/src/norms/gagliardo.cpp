#include "velavg/norms/gagliardo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "velavg/norms/grid_norms.hpp"
#include "velavg/numerics/qmc.hpp"

namespace velavg {

std::string to_string(SeminormVariant v) {
  return v == SeminormVariant::paper ? "paper" : "gagliardo";
}

SeminormVariant parse_seminorm_variant(const std::string& name) {
  if (name == "paper") return SeminormVariant::paper;
  if (name == "gagliardo") return SeminormVariant::gagliardo;
  throw std::invalid_argument("unknown seminorm variant '" + name + "'");
}

bool gagliardo_admissible(double s, double p_exp) {
  if (!(p_exp > 1.0) || std::isinf(p_exp) || !(s > 0.0)) return false;
  if (p_exp == 2.0 && s == 0.5) return true;
  return s < std::min(1.0 / p_exp, 1.0 - 1.0 / p_exp);
}

double interpolate(const AverageGrid4& grid, const std::array<double, 4>& y) {
  const GridSpec& g = grid.grid;
  std::array<int, 4> base{};
  std::array<double, 4> frac{};
  for (int a = 0; a < 4; ++a) {
    const double lo = a == 0 ? g.t_axis.lo : g.x_box.lo[a - 1];
    const double pos = (y[a] - lo) / g.step(a);
    if (!(pos >= 0.0) || pos > g.n[a] - 1) return 0.0;
    int b = static_cast<int>(pos);
    if (b >= g.n[a] - 1) b = g.n[a] - 2;
    base[a] = b;
    frac[a] = pos - b;
  }
  double v = 0.0;
  for (int corner = 0; corner < 16; ++corner) {
    double w = 1.0;
    std::array<int, 4> idx{};
    for (int a = 0; a < 4; ++a) {
      const int bit = (corner >> a) & 1;
      idx[a] = base[a] + bit;
      w *= bit ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0) v += w * grid.at(idx[0], idx[1], idx[2], idx[3]);
  }
  return v;
}

SeminormEstimate gagliardo_mc(const AverageGrid4& grid, double s, double p_exp,
                              SeminormVariant variant, const SamplerSpec& sampler,
                              const Exec& exec) {
  if (!gagliardo_admissible(s, p_exp)) {
    throw std::invalid_argument(
        "gagliardo_mc: need 0 < s < min(1/p, 1 - 1/p) (or s = 1/2 at p = 2)");
  }
  if (sampler.dimension != 8) throw std::invalid_argument("gagliardo_mc: sampler dimension must be 8");

  const GridSpec& g = grid.grid;
  const double m = variant == SeminormVariant::paper ? 2.0 : p_exp;
  const double sp = s * p_exp;

  SeminormEstimate out;
  out.variant = variant;
  out.s = s;
  out.p_exp = p_exp;
  out.n_samples = sampler.points_per_shift() * sampler.n_shifts;

  std::array<double, 4> lo{g.t_axis.lo, g.x_box.lo[0], g.x_box.lo[1], g.x_box.lo[2]};
  std::array<double, 4> len{};
  double diam2 = 0.0;
  double hmin = g.step(0);
  double box_volume = 1.0;
  for (int a = 0; a < 4; ++a) {
    len[a] = g.step(a) * (g.n[a] - 1);
    diam2 += len[a] * len[a];
    hmin = std::min(hmin, g.step(a));
    box_volume *= len[a];
  }
  const double D = std::sqrt(diam2);
  const double r_min = 0.5 * hmin;
  const double log_ratio = std::log(D / r_min);
  const double sphere = 2.0 * std::numbers::pi * std::numbers::pi;  // |S^3|
  out.r_min = r_min;

  const double mass = power_integral(grid, m);
  out.tail = 2.0 * sphere * std::pow(D, -sp) / sp * mass;
  out.bias_bound = sphere * std::pow(r_min, m - sp) / (m - sp) * gradient_power_integral(grid, m);
  if (mass == 0.0) return out;

  const PointStream stream = sobol_stream(sampler);
  const double weight = box_volume * sphere * (1.0 + log_ratio);
  auto numerator = [m](double d) {
    const double a = std::fabs(d);
    return m == 2.0 ? a * a : std::pow(a, m);
  };
  const auto sums = shift_sums<1>(stream, exec, [&](std::span<const double> u) {
    std::array<double, 4> y1{}, y2{};
    for (int a = 0; a < 4; ++a) y1[a] = lo[a] + len[a] * u[a];
    // Uniform direction on S^3 from three uniforms.
    const double c = std::sqrt(u[4]);
    const double sn = std::sqrt(1.0 - u[4]);
    const double th1 = 2.0 * std::numbers::pi * u[5];
    const double th2 = 2.0 * std::numbers::pi * u[6];
    const double dir[4] = {sn * std::cos(th1), sn * std::sin(th1), c * std::cos(th2),
                           c * std::sin(th2)};
    // Radius density: flat on [0, r_min], proportional to 1/r above, continuous at r_min.
    const double a = u[7] * (1.0 + log_ratio);
    const double r = a < 1.0 ? r_min * a : r_min * std::exp(a - 1.0);
    bool inside = true;
    for (int a = 0; a < 4; ++a) {
      y2[a] = y1[a] + r * dir[a];
      if (y2[a] < lo[a] || y2[a] > lo[a] + len[a]) inside = false;
    }
    const double d = interpolate(grid, y1) - interpolate(grid, y2);
    const double val = numerator(d) * std::pow(r, -sp) * std::max(1.0, r_min / r);
    return std::array<double, 1>{inside ? val : 2.0 * val};
  });
  std::vector<double> per_shift;
  const double n = static_cast<double>(sampler.points_per_shift());
  for (const auto& v : sums) per_shift.push_back(weight * v[0] / n + out.tail);
  const Estimate integral = combine_shifts(per_shift, out.n_samples);
  out.integral = integral.value;
  out.integral_std_error = integral.std_error;
  out.value = std::pow(integral.value, 1.0 / p_exp);
  out.std_error = out.value / (p_exp * integral.value) * integral.std_error;
  return out;
}

}  // namespace velavg
