#include "velavg/kinetic/bump.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "velavg/kinetic/kinematics.hpp"
#include "velavg/numerics/rng.hpp"

namespace velavg {

double bump_profile(double r) {
  const double a = 1.0 - r * r;
  return a > 0.0 ? std::exp(-1.0 / a) : 0.0;
}

Box3 BumpSpec::x_box() const { return Ball3{x_center, x_width}.bounding_box(); }

void validate_bump(const BumpSpec& spec, const PhaseDomain& domain, const Box3& x_box) {
  domain.validate();
  if (!(spec.t_width > 0.0 && spec.x_width > 0.0 && spec.p_width > 0.0)) {
    throw std::invalid_argument("bump: widths must be positive");
  }
  const Interval window = domain.source_window();
  if (spec.t_center - spec.t_width < window.lo || spec.t_center + spec.t_width > window.hi) {
    throw std::invalid_argument("bump: time support must lie in [eps0, T - eps0]");
  }
  const Box3 xb = spec.x_box();
  for (int i = 0; i < 3; ++i) {
    if (xb.lo[i] < x_box.lo[i] || xb.hi[i] > x_box.hi[i]) {
      throw std::invalid_argument("bump: spatial support must lie in the declared x box");
    }
  }
  if (norm(spec.p_center) + spec.p_width > domain.R * (1.0 + 1e-12)) {
    throw std::invalid_argument("bump: momentum support must lie in B_R");
  }
}

namespace {

SupportBox declared_support(const PhaseDomain& domain, const Box3& x_box) {
  return SupportBox{domain.T, domain.source_window(), x_box, domain.R};
}

SupportHints bump_hints(const BumpSpec& s) {
  return SupportHints{Interval{s.t_center - s.t_width, s.t_center + s.t_width},
                      Ball3{s.x_center, s.x_width}, Ball3{s.p_center, s.p_width}};
}

}  // namespace

ScalarField7 bump_field(const BumpSpec& spec, const PhaseDomain& domain, const Box3& x_box) {
  validate_bump(spec, domain, x_box);
  const BumpSpec s = spec;
  auto eval = [s](double t, const Vec3& x, const Vec3& p) {
    const double rt = (t - s.t_center) / s.t_width;
    const double rx2 = norm2(x - s.x_center) / (s.x_width * s.x_width);
    const double rp2 = norm2(p - s.p_center) / (s.p_width * s.p_width);
    const double at = 1.0 - rt * rt;
    const double ax = 1.0 - rx2;
    const double ap = 1.0 - rp2;
    if (at <= 0.0 || ax <= 0.0 || ap <= 0.0) return 0.0;
    return s.amplitude * std::exp(-(1.0 / at + 1.0 / ax + 1.0 / ap));
  };
  return ScalarField7(eval, declared_support(domain, x_box), Smoothness::smooth,
                      bump_hints(s));
}

TransportPair transport_source(const BumpSpec& spec, const PhaseDomain& domain,
                               const Box3& x_box) {
  ScalarField7 u = bump_field(spec, domain, x_box);
  const BumpSpec s = spec;
  auto eval = [s](double t, const Vec3& x, const Vec3& p) {
    const double dt = t - s.t_center;
    const Vec3 dx = x - s.x_center;
    const double wt2 = s.t_width * s.t_width;
    const double wx2 = s.x_width * s.x_width;
    const double at = 1.0 - dt * dt / wt2;
    const double ax = 1.0 - norm2(dx) / wx2;
    const double ap = 1.0 - norm2(p - s.p_center) / (s.p_width * s.p_width);
    if (at <= 0.0 || ax <= 0.0 || ap <= 0.0) return 0.0;
    const double b = s.amplitude * std::exp(-(1.0 / at + 1.0 / ax + 1.0 / ap));
    // Logarithmic derivatives of the time and space factors.
    const double dlog_t = -2.0 * dt / (wt2 * at * at);
    const double dlog_x_scale = -2.0 / (wx2 * ax * ax);
    return b * (dlog_t + dlog_x_scale * dot(velocity(p), dx));
  };
  ScalarField7 f(eval, declared_support(domain, x_box), Smoothness::smooth, bump_hints(s));
  return TransportPair{std::move(u), std::move(f)};
}

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::zero: return "zero";
    case FieldKind::bump: return "bump";
    case FieldKind::transport_bump: return "transport-bump";
  }
  return "unknown";
}

FieldKind parse_field_kind(const std::string& name) {
  if (name == "zero") return FieldKind::zero;
  if (name == "bump") return FieldKind::bump;
  if (name == "transport-bump") return FieldKind::transport_bump;
  throw std::invalid_argument("unknown field kind '" + name +
                              "' (expected zero, bump or transport-bump)");
}

BumpSpec random_bump_spec(const PhaseDomain& domain, std::uint64_t seed,
                          std::uint64_t index, double amplitude) {
  domain.validate();
  CounterStream rng(seed, 0xB0B0ULL + index);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };

  BumpSpec s;
  const double T = domain.T;
  s.t_center = T * uniform(0.45, 0.55);
  const double margin = std::min(s.t_center - domain.eps0, T - domain.eps0 - s.t_center);
  s.t_width = margin * uniform(0.8, 0.95);

  s.x_center = {uniform(-0.1, 0.1), uniform(-0.1, 0.1), uniform(-0.1, 0.1)};
  s.x_width = uniform(0.6, 0.8);

  const double R = domain.R;
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * std::numbers::pi);
  const double rho = std::sqrt(1.0 - z * z);
  const double c = R * uniform(0.0, 0.3);
  s.p_center = {c * rho * std::cos(phi), c * rho * std::sin(phi), c * z};
  s.p_width = (R - c) * uniform(0.6, 0.9);

  s.amplitude = amplitude * uniform(0.75, 1.25);
  return s;
}

std::vector<SourceCase> make_family(const FamilySpec& family, const PhaseDomain& domain) {
  if (family.count < 1) throw std::invalid_argument("family: count must be >= 1");
  std::vector<SourceCase> out;
  out.reserve(family.count);
  for (int i = 0; i < family.count; ++i) {
    const BumpSpec spec = random_bump_spec(domain, family.seed, i, family.amplitude);
    const std::string label = to_string(family.kind) + "#" + std::to_string(i);
    switch (family.kind) {
      case FieldKind::zero: {
        const SupportBox box{domain.T, domain.source_window(), spec.x_box(), domain.R};
        out.push_back({label, spec, zero_field(box), zero_field(box)});
        break;
      }
      case FieldKind::bump:
        out.push_back({label, spec, bump_field(spec, domain), std::nullopt});
        break;
      case FieldKind::transport_bump: {
        TransportPair pair = transport_source(spec, domain);
        out.push_back({label, spec, std::move(pair.f), std::move(pair.u)});
        break;
      }
    }
  }
  return out;
}

}  // namespace velavg
