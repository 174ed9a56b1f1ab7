#include "velavg/kinetic/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace velavg {

void PhaseDomain::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("domain: T must be positive");
  if (!(eps0 > 0.0 && eps0 < 0.5 * T)) {
    throw std::invalid_argument("domain: eps0 must satisfy 0 < eps0 < T/2");
  }
  if (!(R > 0.0)) throw std::invalid_argument("domain: R must be positive");
}

void SupportBox::validate() const {
  if (!(horizon > 0.0)) throw std::invalid_argument("support: horizon must be positive");
  if (!(t.lo >= 0.0 && t.hi <= horizon && t.lo < t.hi)) {
    throw std::invalid_argument("support: time window must be a nonempty subset of [0, T]");
  }
  for (int i = 0; i < 3; ++i) {
    if (!(x.lo[i] < x.hi[i])) throw std::invalid_argument("support: degenerate x box");
  }
  if (!(p_radius > 0.0)) throw std::invalid_argument("support: momentum radius must be positive");
}

std::string to_string(Smoothness s) {
  return s == Smoothness::smooth ? "smooth" : "bounded";
}

ScalarField7::ScalarField7(Eval eval, SupportBox support, Smoothness smoothness,
                           SupportHints hints)
    : eval_(std::make_shared<const Eval>(std::move(eval))),
      support_(support),
      hints_(hints),
      smoothness_(smoothness),
      p_radius2_(support.p_radius * support.p_radius) {
  support_.validate();
}

Interval ScalarField7::time_window() const {
  if (!hints_.t) return support_.t;
  return {std::max(hints_.t->lo, support_.t.lo), std::min(hints_.t->hi, support_.t.hi)};
}

Ball3 ScalarField7::momentum_ball() const {
  if (hints_.p) return *hints_.p;
  return Ball3{{}, support_.p_radius};
}

Box3 ScalarField7::spatial_box() const {
  if (!hints_.x) return support_.x;
  const Box3 b = hints_.x->bounding_box();
  Box3 out;
  for (int i = 0; i < 3; ++i) {
    out.lo[i] = std::max(b.lo[i], support_.x.lo[i]);
    out.hi[i] = std::min(b.hi[i], support_.x.hi[i]);
  }
  return out;
}

ScalarField7 zero_field(const SupportBox& support) {
  return ScalarField7([](double, const Vec3&, const Vec3&) { return 0.0; }, support,
                      Smoothness::smooth);
}

ScalarField7 constant_field(double c, const SupportBox& support) {
  return ScalarField7([c](double, const Vec3&, const Vec3&) { return c; }, support,
                      Smoothness::bounded);
}

namespace {

Ball3 enclosing_ball(const Ball3& a, const Ball3& b) {
  const double d = norm(b.center - a.center);
  if (d + b.radius <= a.radius) return a;
  if (d + a.radius <= b.radius) return b;
  const double r = 0.5 * (d + a.radius + b.radius);
  const Vec3 dir = (1.0 / d) * (b.center - a.center);
  return {a.center + (r - a.radius) * dir, r};
}

}  // namespace

ScalarField7 linear_combination(std::span<const ScalarField7> fields,
                                std::span<const double> coeffs) {
  if (fields.empty() || fields.size() != coeffs.size()) {
    throw std::invalid_argument("linear_combination: need matching nonempty inputs");
  }
  SupportBox box = fields[0].support();
  SupportHints hints = fields[0].hints();
  bool smooth = fields[0].smoothness() == Smoothness::smooth;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const SupportBox& s = fields[i].support();
    const SupportHints& h = fields[i].hints();
    box.horizon = std::max(box.horizon, s.horizon);
    box.t = {std::min(box.t.lo, s.t.lo), std::max(box.t.hi, s.t.hi)};
    for (int a = 0; a < 3; ++a) {
      box.x.lo[a] = std::min(box.x.lo[a], s.x.lo[a]);
      box.x.hi[a] = std::max(box.x.hi[a], s.x.hi[a]);
    }
    box.p_radius = std::max(box.p_radius, s.p_radius);
    hints.t = (hints.t && h.t)
                  ? std::optional<Interval>({std::min(hints.t->lo, h.t->lo),
                                             std::max(hints.t->hi, h.t->hi)})
                  : std::nullopt;
    hints.x = (hints.x && h.x) ? std::optional<Ball3>(enclosing_ball(*hints.x, *h.x))
                               : std::nullopt;
    hints.p = (hints.p && h.p) ? std::optional<Ball3>(enclosing_ball(*hints.p, *h.p))
                               : std::nullopt;
    smooth = smooth && fields[i].smoothness() == Smoothness::smooth;
  }
  std::vector<ScalarField7> terms(fields.begin(), fields.end());
  std::vector<double> c(coeffs.begin(), coeffs.end());
  return ScalarField7(
      [terms = std::move(terms), c = std::move(c)](double t, const Vec3& x, const Vec3& p) {
        double sum = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) sum += c[i] * terms[i](t, x, p);
        return sum;
      },
      box, smooth ? Smoothness::smooth : Smoothness::bounded, hints);
}

}  // namespace velavg
