#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "velavg/bounds/checks.hpp"
#include "velavg/bounds/constants.hpp"
#include "velavg/bounds/interpolation.hpp"
#include "velavg/bounds/report.hpp"
#include "velavg/bounds/scaling.hpp"
#include "velavg/bounds/split.hpp"
#include "velavg/kinetic/bump.hpp"
#include "velavg/norms/spectral.hpp"
#include "velavg/numerics/rng.hpp"

using namespace velavg;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const PhaseDomain kDomain{1.0, 0.1, 1.0};

// Small transport bump; its solution vanishes at t = T.
TransportPair small_pair() {
  BumpSpec b;
  b.t_center = 0.45;
  b.t_width = 0.25;
  b.x_center = {0.0, 0.0, 0.0};
  b.x_width = 0.5;
  b.p_center = {0.1, 0.0, 0.0};
  b.p_width = 0.5;
  return transport_source(b, kDomain);
}

CheckResources cheap_resources(int n) {
  CheckResources r;
  r.nt = n;
  r.nx = n;
  r.materialize.n_radial = 3;
  r.materialize.n_polar = 3;
  r.materialize.n_azimuthal = 6;
  r.phase_sampler.log2_points = 10;
  r.pair_sampler.log2_points = 12;
  return r;
}

bool close_ulps(double a, double b, double ulps) {
  return std::fabs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * std::fabs(b);
}

}  // namespace

TEST_CASE("constants at T = R = 1") {
  const ConstantsRegistry c = constants(1.0, 1.0, 2.0);
  CHECK(c.C3 == 1.0);
  CHECK(c.C4 == doctest::Approx(4.18879020478639).epsilon(1e-14));
  CHECK(c.C_R == doctest::Approx(45.254833995939).epsilon(1e-13));
  CHECK(c.C5 == doctest::Approx(20.1819).epsilon(1e-4));
  CHECK(c.C5 == doctest::Approx(3.0 * std::sqrt(32.0 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK(c.C6 == c.C5);
  CHECK(c.C1 == doctest::Approx(std::sqrt(0.5) * (1.0 - std::exp(-1.0))));
  CHECK_THROWS(constants(1.0, 1.0, 1.0));
  CHECK_THROWS(constants(1.0, 1.0, 0.5));
  CHECK_THROWS(constants(1.0, 1.0, kInf));
  CHECK_THROWS(constants(0.0, 1.0, 2.0));
  CHECK_THROWS(constants(1.0, -1.0, 2.0));
}

TEST_CASE("constants match an independent recomputation") {
  CounterStream rng(5, 1);
  for (int k = 0; k < 200; ++k) {
    const double T = 0.1 + 4.0 * rng.uniform();
    const double R = 0.1 + 3.0 * rng.uniform();
    const double q = 1.01 + 10.0 * rng.uniform();
    const ConstantsRegistry c = constants(T, R, q);
    const ConstantsRegistry again = constants(T, R, q);
    CHECK(std::memcmp(&c, &again, sizeof c) == 0);

    const double vol = 4.0 / 3.0 * std::numbers::pi * std::pow(R, 3);
    const double expo = (q - 1.0) / q;
    const double cr = std::max(8.0 * std::numbers::pi * std::pow(R, 3) / 3.0,
                               16.0 * R * std::pow(1.0 + R * R, 1.5));
    CHECK(close_ulps(c.C1, std::exp(expo * std::log(expo)) * -std::expm1(-T), 16));
    CHECK(close_ulps(c.C2, std::exp((1.0 - 1.0 / q) * std::log(vol) + std::log(T) / q +
                                    expo * std::log(expo)),
                     16));
    CHECK(c.C3 == T);
    CHECK(close_ulps(c.C4, vol * T, 8));
    CHECK(close_ulps(c.C_R, cr, 8));
    CHECK(close_ulps(c.C5, std::sqrt(6.0 * (1.0 + T / 2.0) * cr), 8));
    const double args[4] = {vol, T, c.C4, c.C5};
    bool attained = false;
    for (double v : args) {
      CHECK(c.C6 >= v * (1.0 - 1e-15));
      attained = attained || close_ulps(c.C6, v, 8);
    }
    CHECK(attained);
  }
}

TEST_CASE("L^q constant selection") {
  CHECK(lq_constant(2.0, 1.0, 1.0) == 2.0);
  CHECK(lq_constant(2.0, 1.0, kInf) == doctest::Approx(8.0 * std::numbers::pi / 3.0));
  CHECK(lq_constant(2.0, 1.0, 3.0) == constants(2.0, 1.0, 3.0).C2);
  CHECK_THROWS(lq_constant(1.0, 1.0, 0.9));
}

TEST_CASE("bound report pass flag and serialization") {
  CHECK(make_report("a", 1.0, 1.0, 0.0).pass);
  CHECK(make_report("a", 1.3, 1.0, 0.1).pass);
  CHECK_FALSE(make_report("a", 1.31, 1.0, 0.1).pass);
  CHECK(make_report("a", 2.0, 3.0, 0.25).margin == 1.0);
  CHECK(make_report("a", 2.0, 3.0, 0.25).net_margin() == 0.25);

  CounterStream rng(6, 0);
  for (int k = 0; k < 50; ++k) {
    const double lhs = std::exp(20.0 * rng.uniform() - 10.0) / 3.0;
    const double rhs = std::exp(20.0 * rng.uniform() - 10.0) / 7.0;
    const BoundReport r =
        make_report("r" + std::to_string(k), lhs, rhs, rng.uniform() * 1e-3, {{"k", k}});
    const BoundReport back =
        report_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back.name == r.name);
    CHECK(back.lhs == r.lhs);
    CHECK(back.rhs == r.rhs);
    CHECK(back.margin == r.margin);
    CHECK(back.mc_error == r.mc_error);
    CHECK(back.pass == r.pass);
    CHECK(back.parameters == r.parameters);
  }
  const std::string csv = summary_csv({make_report("x,y", 1.0, 2.0, 0.0)});
  CHECK(csv == "name,lhs,rhs,margin,pass\n\"x,y\",1,2,1,true\n");
}

TEST_CASE("interpolation exponents") {
  for (double theta : {0.1, 0.4, 0.9}) {
    const InterpolationExponents e1 = interpolation_params(1.0, theta);
    CHECK(e1.s == doctest::Approx(1.0 - 1.0 / e1.p_exp));
    const InterpolationExponents ei = interpolation_params(kInf, theta);
    CHECK(ei.s == doctest::Approx(1.0 / ei.p_exp));
  }
  for (double q : {1.0, 1.5, 3.0, kInf}) {
    const InterpolationExponents e = interpolation_params(q, 1.0);
    CHECK(e.p_exp == 2.0);
    CHECK(e.s == 0.5);
  }
  CHECK(interpolation_params(3.0, 0.0).p_exp == doctest::Approx(3.0));
  CHECK_THROWS(interpolation_params(0.5, 0.5));
  CHECK_THROWS(interpolation_params(2.0, 1.5));
}

TEST_CASE("admissible s") {
  CHECK(admissible_s(2.0).lo == 0.0);
  CHECK(admissible_s(2.0).hi == 0.5);
  CHECK(admissible_s(4.0).hi == 0.25);
  CHECK(admissible_s(4.0 / 3.0).hi == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_FALSE(admissible_s(2.0).contains(0.5));
  CHECK_FALSE(admissible_s(2.0).contains(0.0));
  CHECK(admissible_s(2.0).contains(0.45));
  CHECK_THROWS(admissible_s(1.0));
  CHECK_THROWS(admissible_s(kInf));
}

TEST_CASE("exponent coherence") {
  // s stays in the closure of the admissible interval, touching its upper
  // end exactly for q = 1 and q = inf.
  for (double q : {1.0, 1.2, 2.0, 3.0, 7.5, 40.0, kInf}) {
    for (int k = 1; k < 20; ++k) {
      const double theta = k / 20.0;
      const InterpolationExponents e = interpolation_params(q, theta);
      const double hi = admissible_s(e.p_exp).hi;
      CHECK(e.s > 0.0);
      CHECK(e.s <= hi + 1e-15);
      if (q == 1.0 || std::isinf(q)) {
        CHECK(std::fabs(e.s - hi) < 1e-14);
      } else {
        CHECK(e.s < hi - 1e-6);
      }
    }
  }
}

TEST_CASE("combined split bound is minimized at the optimal alpha") {
  CounterStream rng(8, 0);
  for (int k = 0; k < 500; ++k) {
    const double A = std::exp(10.0 * rng.uniform() - 5.0);
    const double B = std::exp(10.0 * rng.uniform() - 5.0);
    const double a = optimal_alpha(A, B);
    const double at = split_bound(a, A, B, 45.0);
    CHECK(at <= split_bound(2.0 * a, A, B, 45.0));
    CHECK(at <= split_bound(0.5 * a, A, B, 45.0));
    CHECK(at == doctest::Approx(4.0 * 45.0 * std::sqrt(A * B)));
  }
  CHECK(optimal_alpha(0.0, 1.0) == 0.0);
  CHECK_THROWS(split_bound(0.0, 1.0, 1.0, 1.0));
}

TEST_CASE("split diagnostic: zero field and cost guards") {
  const SupportBox box{1.0, {0.1, 0.9}, {{-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}}, 1.0};
  SplitOptions o;
  o.nt = o.nx = 8;
  const SplitDiagnostic d = fourier_split_diag(zero_field(box), o);
  CHECK(d.i1 == 0.0);
  CHECK(d.i2 == 0.0);
  CHECK(d.cross == 0.0);
  CHECK(d.unsplit == 0.0);
  CHECK(d.bound1 == 0.0);
  CHECK(d.bound2 == 0.0);
  SplitOptions big = o;
  big.nt = 17;
  CHECK_THROWS(fourier_split_diag(zero_field(box), big));
  big = o;
  big.n_azimuthal = 9;  // 2 x 4 x 9 = 72 nodes
  CHECK_THROWS(fourier_split_diag(zero_field(box), big));
}

TEST_CASE("split diagnostic on a transport bump") {
  const TransportPair pair = small_pair();
  SplitOptions o;
  o.nt = o.nx = 10;
  const SplitDiagnostic d = fourier_split_diag(pair.f, o);
  CHECK(d.momentum_nodes == 32);
  CHECK(d.alpha == d.alpha_opt);
  CHECK(d.alpha > 0.0);
  // With the cross term the decomposition is exact.
  CHECK(std::fabs(d.i1 + d.i2 + d.cross - d.unsplit) <= 1e-12 * d.unsplit);
  CHECK(d.i1 <= d.bound1);
  CHECK(d.i2 <= d.bound2);

  // The unsplit integral is the H^1/2 norm of the same quadrature average.
  MaterializeOptions m;
  m.duhamel = o.duhamel;
  m.n_radial = o.n_radial;
  m.n_polar = o.n_polar;
  m.n_azimuthal = o.n_azimuthal;
  const double h12 = hs_norm_fourier(fft4(materialize_average(pair.f, d.grid, m), o.pad), 0.5);
  CHECK(d.unsplit == doctest::Approx(h12 * h12).epsilon(1e-10));

  // An alpha above every symbol puts everything in the near set.
  SplitOptions wide = o;
  wide.alpha = 1e6;
  const SplitDiagnostic w = fourier_split_diag(pair.f, wide);
  CHECK(w.i2 == 0.0);
  CHECK(w.cross == 0.0);
  CHECK(w.i1 == doctest::Approx(d.unsplit).epsilon(1e-12));
}

TEST_CASE("zero source passes every check trivially") {
  const SupportBox box{1.0, {0.1, 0.9}, {{-0.3, -0.3, -0.3}, {0.3, 0.3, 0.3}}, 1.0};
  const ScalarField7 z = zero_field(box);
  const CheckResources res = cheap_resources(8);
  const std::vector<double> qs{1.0, 2.0, kInf};
  for (const BoundReport& r : check_lq_bounds(z, qs, res)) {
    CHECK(r.lhs == 0.0);
    CHECK(r.rhs == 0.0);
    CHECK(r.pass);
  }
  const PreparedSource src = prepare_source(z, res);
  const BoundReport l2 = check_lemma2(src, res);
  CHECK(l2.lhs == 0.0);
  CHECK(l2.rhs == 0.0);
  CHECK(l2.pass);
  const BoundReport t1 = check_theorem1(src, 0.2, 3.0, res);
  CHECK(t1.lhs == 0.0);
  CHECK(t1.rhs == 0.0);
  CHECK(t1.pass);
  CHECK_THROWS(check_theorem1(src, 0.5, 2.0, res));
  CHECK_THROWS(check_theorem1(src, 0.3, 4.0, res));
}

TEST_CASE("bump checks pass with positive margin") {
  const TransportPair pair = small_pair();
  const CheckResources res = cheap_resources(12);
  const std::vector<double> qs{1.0, 2.0, 4.0, kInf};
  for (const BoundReport& r : check_lq_bounds(pair.f, qs, res)) {
    CHECK(r.pass);
    CHECK(r.net_margin() > 0.0);
  }
  const PreparedSource src = prepare_source(pair.f, res);
  const BoundReport l2 = check_lemma2(src, res);
  CHECK(l2.pass);
  CHECK(l2.net_margin() > 0.0);
  const double ratio = l2.parameters.at("ratio").get<double>();
  CHECK(ratio > 0.0);
  CHECK(ratio <= 1.0);
  for (auto [p, s] : std::vector<std::pair<double, double>>{{2.0, 0.45}, {3.0, 0.2}}) {
    const BoundReport t1 = check_theorem1(src, s, p, res);
    CHECK(t1.pass);
    CHECK(t1.net_margin() > 0.0);
    CHECK(t1.parameters.at("unoptimized_margin").get<double>() > 0.0);
  }
}

TEST_CASE("pass flags are stable when budgets double") {
  const TransportPair pair = small_pair();
  CheckResources res = cheap_resources(10);
  const PreparedSource src = prepare_source(pair.f, res);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CheckResources lo = res;
    lo.phase_sampler.seed = lo.pair_sampler.seed = seed;
    CheckResources hi = lo;
    hi.phase_sampler.log2_points += 1;
    hi.pair_sampler.log2_points += 1;
    CHECK(check_lemma2(src, lo).pass == check_lemma2(src, hi).pass);
    CHECK(check_theorem1(src, 0.2, 3.0, lo).pass == check_theorem1(src, 0.2, 3.0, hi).pass);
  }
}

TEST_CASE("scaled sources") {
  const TransportPair pair = small_pair();
  const ScalarField7 same = scale_source(pair.f, 1.0);
  CounterStream rng(9, 0);
  for (int k = 0; k < 100; ++k) {
    const double t = rng.uniform();
    const Vec3 x{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5};
    const Vec3 p{0.5 * rng.uniform(), 0.0, 0.2 * rng.uniform()};
    CHECK(same(t, x, p) == pair.f(t, x, p));
    const double l = 0.8 + 0.5 * rng.uniform();
    CHECK(scale_source(pair.f, l)(t, x, p) == doctest::Approx(l * pair.f(l * t, l * x, p)));
  }
  CHECK_THROWS(scale_source(pair.f, 0.0));
  CHECK_THROWS(scale_source(pair.f, 0.4));  // pushes the support past T
}

TEST_CASE("line fit agrees with the oracle") {
  CounterStream rng(10, 0);
  std::vector<double> x, y;
  for (int k = 0; k < 12; ++k) {
    x.push_back(rng.uniform() * 3.0);
    y.push_back(-1.5 * x.back() + 0.7 + 0.01 * (rng.uniform() - 0.5));
  }
  const SlopeFit f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(oracle::fit_slope(x, y)).epsilon(1e-12));
  CHECK(f.slope_std_error > 0.0);
  CHECK(f.slope_std_error < 0.01);
  CHECK_THROWS(fit_line({1.0}, {1.0}));
  CHECK_THROWS(fit_line({1.0, 1.0}, {1.0, 2.0}));
}

TEST_CASE("scaling experiment at coarse resolution") {
  BumpSpec b;
  b.t_center = 0.35;
  b.t_width = 0.18;
  b.x_width = 0.6;
  b.p_center = {0.1, 0.0, 0.0};
  b.p_width = 0.5;
  const TransportPair pair = transport_source(b, kDomain);
  ScalingOptions o;
  o.lambdas = {0.8, 1.0, 1.25};
  o.nt = o.nx = 14;
  o.materialize.n_radial = 2;
  o.materialize.n_polar = 3;
  o.materialize.n_azimuthal = 4;
  const ScalingReport r = scaling_experiment(pair.f, o);
  CHECK(r.seminorm_target == -1.5);
  CHECK(r.lp_target == -2.0);
  CHECK(r.method == "fourier");
  CHECK(r.points.size() == 3);
  // Coarse grid: only the sign and rough size of the exponents are pinned here.
  CHECK(r.seminorm_fit.slope == doctest::Approx(-1.5).epsilon(0.15));
  CHECK(r.lp_fit.slope == doctest::Approx(-2.0).epsilon(0.1));

  ScalingOptions bad = o;
  bad.lambdas = {0.4, 1.0};
  CHECK_THROWS(scaling_experiment(pair.f, bad));
  bad = o;
  bad.lambdas = {1.0};
  CHECK_THROWS(scaling_experiment(pair.f, bad));
  bad = o;
  bad.p_exp = 3.0;
  bad.s = 0.5;
  CHECK_THROWS(scaling_experiment(pair.f, bad));
}
