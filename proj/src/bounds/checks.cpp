#include "velavg/bounds/checks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "velavg/bounds/constants.hpp"
#include "velavg/bounds/interpolation.hpp"
#include "velavg/geometry/direction.hpp"
#include "velavg/kinetic/duhamel.hpp"
#include "velavg/norms/gagliardo.hpp"
#include "velavg/norms/grid_norms.hpp"
#include "velavg/norms/phase_norms.hpp"
#include "velavg/norms/spectral.hpp"

namespace velavg {

namespace {

SamplerSpec with_dimension(SamplerSpec spec, unsigned dimension) {
  spec.dimension = dimension;
  return spec;
}

Estimate phase_norm(const ScalarField7& g, double q, const CheckResources& res) {
  const SamplerSpec spec = with_dimension(res.phase_sampler, 7);
  if (std::isinf(q)) return sup_norm_phase(g, spec, res.materialize.exec);
  return lp_norm_phase(g, q, spec, res.materialize.exec);
}

// Standard error of prod x_i^a_i by the delta method.
double product_error(double value, std::initializer_list<std::array<double, 3>> terms) {
  double rel2 = 0.0;
  for (const auto& [x, se, a] : terms) {
    if (x == 0.0) {
      if (se != 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    rel2 += (a * se / x) * (a * se / x);
  }
  return std::fabs(value) * std::sqrt(rel2);
}

nlohmann::json q_label(double q) {
  if (std::isinf(q)) return "inf";
  return q;
}

nlohmann::json estimate_json(const Estimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

nlohmann::json sampler_json(const SamplerSpec& s) {
  return {{"kind", s.kind == SamplerKind::sobol ? "sobol" : "uniform-prng"},
          {"dimension", s.dimension},
          {"seed", s.seed},
          {"shifts", s.n_shifts},
          {"points_per_shift", s.points_per_shift()}};
}

}  // namespace

PreparedSource prepare_source(const ScalarField7& f, const CheckResources& res) {
  MaterializeOptions opt = res.materialize;
  opt.duhamel.damped = false;
  const GridSpec grid = grid_for(f, res.nt, res.nx);
  return PreparedSource{f, duhamel_solve(f, opt.duhamel), materialize_average(f, grid, opt)};
}

std::vector<BoundReport> check_lq_bounds(const ScalarField7& h, std::span<const double> q,
                                         const CheckResources& res) {
  MaterializeOptions opt = res.materialize;
  opt.duhamel.damped = true;
  const AverageGrid4 avg = materialize_average(h, grid_for(h, res.nt, res.nx), opt);
  const double T = h.support().horizon;
  const double R = h.support().p_radius;
  std::vector<BoundReport> out;
  for (double qi : q) {
    const double cq = lq_constant(T, R, qi);
    const Estimate hn = phase_norm(h, qi, res);
    const double lhs = lq_norm_avg(avg, qi);
    nlohmann::json params{{"q", q_label(qi)},
                          {"constant", cq},
                          {"constant_name", qi == 1.0 ? "C3" : (std::isinf(qi) ? "C4" : "C2")},
                          {"source_norm", estimate_json(hn)},
                          {"grid", {res.nt, res.nx, res.nx, res.nx}},
                          {"materialization", avg.metadata},
                          {"sampler", sampler_json(with_dimension(res.phase_sampler, 7))}};
    out.push_back(make_report("lq-bound", lhs, cq * hn.value, cq * hn.std_error, params));
  }
  return out;
}

BoundReport check_lq_bound(const ScalarField7& h, double q, const CheckResources& res) {
  const double qs[1] = {q};
  return check_lq_bounds(h, qs, res)[0];
}

BoundReport check_lemma2(const PreparedSource& src, const CheckResources& res) {
  const double R = src.f.support().p_radius;
  const double cr = c_r(R);
  const SpectralGrid4 spec = fft4(src.average, res.pad);
  const double h12 = hs_norm_fourier(spec, 0.5);
  const Estimate un = phase_norm(src.u, 2.0, res);
  const Estimate fn = phase_norm(src.f, 2.0, res);
  const double rhs = 2.0 * cr * un.value * fn.value;
  const double err = product_error(rhs, {{un.value, un.std_error, 1.0},
                                         {fn.value, fn.std_error, 1.0}});
  nlohmann::json params{{"c_r", cr},
                        {"h12_norm", h12},
                        {"u_l2", estimate_json(un)},
                        {"f_l2", estimate_json(fn)},
                        {"ratio", rhs > 0.0 ? h12 * h12 / rhs : 0.0},
                        {"pad", res.pad},
                        {"grid", {src.average.grid.n[0], src.average.grid.n[1],
                                  src.average.grid.n[2], src.average.grid.n[3]}},
                        {"materialization", src.average.metadata},
                        {"sampler", sampler_json(with_dimension(res.phase_sampler, 7))}};
  return make_report("lemma2", h12 * h12, rhs, err, params);
}

BoundReport check_lemma2(const ScalarField7& f, const CheckResources& res) {
  return check_lemma2(prepare_source(f, res), res);
}

BoundReport check_theorem1(const PreparedSource& src, double s, double p_exp,
                           const CheckResources& res) {
  if (!admissible_s(p_exp).contains(s)) {
    throw std::invalid_argument("theorem1: need 0 < s < min(1/p, 1 - 1/p)");
  }
  const double T = src.f.support().horizon;
  const double R = src.f.support().p_radius;
  const ConstantsRegistry c = constants(T, R, 2.0);
  const SamplerSpec pairs = with_dimension(res.pair_sampler, 8);
  const SeminormEstimate lhs =
      gagliardo_mc(src.average, s, p_exp, SeminormVariant::paper, pairs, res.materialize.exec);
  const Estimate un = phase_norm(src.u, p_exp, res);
  const Estimate fn = phase_norm(src.f, p_exp, res);
  const double rhs = c.C6 * std::pow(un.value, 1.0 - s) * std::pow(fn.value, s);
  const double rhs_err = product_error(rhs, {{un.value, un.std_error, 1.0 - s},
                                             {fn.value, fn.std_error, s}});
  const double err = std::hypot(lhs.std_error, rhs_err);
  const double unopt = c.C6 * (un.value + fn.value);
  nlohmann::json params{{"s", s},
                        {"p", p_exp},
                        {"C6", c.C6},
                        {"variant", to_string(SeminormVariant::paper)},
                        {"seminorm", {{"value", lhs.value},
                                      {"std_error", lhs.std_error},
                                      {"n_pairs", lhs.n_samples},
                                      {"integral", lhs.integral},
                                      {"tail", lhs.tail},
                                      {"bias_bound", lhs.bias_bound},
                                      {"r_min", lhs.r_min}}},
                        {"u_lp", estimate_json(un)},
                        {"f_lp", estimate_json(fn)},
                        {"unoptimized_rhs", unopt},
                        {"unoptimized_margin", unopt - lhs.value},
                        {"materialization", src.average.metadata},
                        {"pair_sampler", sampler_json(pairs)},
                        {"phase_sampler", sampler_json(with_dimension(res.phase_sampler, 7))}};
  return make_report("theorem1", lhs.value, rhs, err, params);
}

BoundReport check_theorem1(const ScalarField7& f, double s, double p_exp,
                           const CheckResources& res) {
  if (!admissible_s(p_exp).contains(s)) {
    throw std::invalid_argument("theorem1: need 0 < s < min(1/p, 1 - 1/p)");
  }
  return check_theorem1(prepare_source(f, res), s, p_exp, res);
}

}  // namespace velavg
