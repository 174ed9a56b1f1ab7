#include <cmath>
#include <filesystem>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "velavg/kinetic/average.hpp"
#include "velavg/kinetic/bump.hpp"
#include "velavg/kinetic/duhamel.hpp"
#include "velavg/kinetic/grid_io.hpp"
#include "velavg/kinetic/kinematics.hpp"
#include "velavg/numerics/rng.hpp"
#include "velavg/numerics/sobol.hpp"

using namespace velavg;

namespace {

const PhaseDomain kDomain{1.0, 0.1, 1.0};

BumpSpec sample_spec() {
  BumpSpec s;
  s.t_center = 0.5;
  s.t_width = 0.3;
  s.x_center = {0.05, -0.1, 0.0};
  s.x_width = 0.6;
  s.p_center = {0.2, 0.1, -0.1};
  s.p_width = 0.6;
  s.amplitude = 1.3;
  return s;
}

// Interior point where u is well away from zero.
PhasePoint random_interior(CounterStream& rng, const BumpSpec& s) {
  PhasePoint pt;
  pt.t = s.t_center + s.t_width * (0.8 * rng.uniform() - 0.1);
  for (int i = 0; i < 3; ++i) {
    pt.x[i] = s.x_center[i] + 0.3 * s.x_width * (2.0 * rng.uniform() - 1.0);
    pt.p[i] = s.p_center[i] + 0.3 * s.p_width * (2.0 * rng.uniform() - 1.0);
  }
  return pt;
}

}  // namespace

TEST_CASE("energy and characteristic shift") {
  CHECK(energy({0, 0, 0}) == 1.0);
  CHECK(energy({1, 1, 1}) == doctest::Approx(2.0));
  const Vec3 s0 = characteristic_shift({0, 0, 0}, {0, 0, 0}, 5.0);
  CHECK(norm(s0) == 0.0);
  const Vec3 s1 = characteristic_shift({1, 0, 0}, {1, 1, 1}, 2.0);
  CHECK(s1[0] == doctest::Approx(2.0));
  CHECK(s1[1] == doctest::Approx(1.0));
  CHECK(s1[2] == doctest::Approx(1.0));
  CounterStream rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p{50 * rng.normal(), 50 * rng.normal(), 50 * rng.normal()};
    const double e = energy(p);
    CHECK(e >= 1.0);
    CHECK(norm(p) / e < 1.0);
    const double dt = 10 * rng.normal();
    const Vec3 x{rng.normal(), rng.normal(), rng.normal()};
    CHECK(norm(characteristic_shift(x, p, dt) - x) < std::fabs(dt) + 1e-300);
  }
}

TEST_CASE("bump field values, support and validation") {
  const BumpSpec s = sample_spec();
  const ScalarField7 b = bump_field(s, kDomain);
  CHECK(b(s.t_center, s.x_center, s.p_center) == doctest::Approx(s.amplitude * std::exp(-3.0)));
  CHECK(b(s.t_center + s.t_width, s.x_center, s.p_center) == 0.0);
  CHECK(b(s.t_center, s.x_center + Vec3{0.61, 0, 0}, s.p_center) == 0.0);
  CHECK(b(s.t_center, s.x_center, s.p_center + Vec3{0, 0, 0.6}) == 0.0);
  CHECK(b(2.0, s.x_center, s.p_center) == 0.0);
  CHECK(b(s.t_center, s.x_center, {0, 0, 1.01}) == 0.0);

  BumpSpec bad = s;
  bad.t_width = 0.45;  // leaves [eps0, T - eps0]
  CHECK_THROWS(bump_field(bad, kDomain));
  bad = s;
  bad.p_width = 0.9;  // leaves B_R
  CHECK_THROWS(bump_field(bad, kDomain));
  bad = s;
  bad.x_width = -1.0;
  CHECK_THROWS(bump_field(bad, kDomain));
  CHECK_THROWS(bump_field(s, kDomain, Box3{{-0.1, -0.1, -0.1}, {0.1, 0.1, 0.1}}));
}

TEST_CASE("bump integral over R^7: separable value against Sobol estimate") {
  const BumpSpec s = sample_spec();
  const ScalarField7 b = bump_field(s, kDomain);
  auto phi = [](double r) { return std::fabs(r) < 1 ? std::exp(-1.0 / (1 - r * r)) : 0.0; };
  const double i1 = oracle::simpson_pieces(phi, -1, 1, 1e-14);
  const double i3 = 4 * std::numbers::pi *
                    oracle::simpson_pieces([&](double r) { return r * r * phi(r); }, 0, 1, 1e-14);
  const double exact = s.amplitude * s.t_width * i1 * std::pow(s.x_width, 3) * i3 *
                       std::pow(s.p_width, 3) * i3;

  SamplerSpec spec;
  spec.dimension = 7;
  spec.seed = 5;
  spec.log2_points = 17;  // 8 shifts x 2^17 = 2^20 points
  const PointStream stream = sobol_stream(spec);
  const double vol = 2 * s.t_width * std::pow(2 * s.x_width, 3) * std::pow(2 * s.p_width, 3);
  std::vector<double> est;
  std::vector<double> u(7);
  for (unsigned k = 0; k < spec.n_shifts; ++k) {
    double sum = 0;
    for (std::uint64_t i = 0; i < spec.points_per_shift(); ++i) {
      stream.point(k, i, u);
      const double t = s.t_center + s.t_width * (2 * u[0] - 1);
      const Vec3 x = s.x_center + s.x_width * Vec3{2 * u[1] - 1, 2 * u[2] - 1, 2 * u[3] - 1};
      const Vec3 p = s.p_center + s.p_width * Vec3{2 * u[4] - 1, 2 * u[5] - 1, 2 * u[6] - 1};
      sum += b(t, x, p);
    }
    est.push_back(vol * sum / spec.points_per_shift());
  }
  double m = 0, v = 0;
  for (double e : est) m += e;
  m /= est.size();
  for (double e : est) v += (e - m) * (e - m);
  const double se = std::sqrt(v / (est.size() - 1) / est.size());
  CHECK(std::fabs(m - exact) <= 3 * se);
}

TEST_CASE("duhamel: trivial sources") {
  const SupportBox box{1.0, {0.0, 1.0}, {{-5, -5, -5}, {5, 5, 5}}, 1.0};
  const ScalarField7 u0 = duhamel_solve(zero_field(box));
  CHECK(u0(0.5, {0.1, 0.2, 0.3}, {0.3, 0, 0}) == 0.0);

  const ScalarField7 one = constant_field(1.0, box);
  const ScalarField7 u = duhamel_solve(one, false, 4);
  for (double t : {0.0, 0.25, 0.6, 1.0}) {
    CHECK(u(t, {0.3, -0.2, 0.1}, {0.4, 0.2, -0.5}) == doctest::Approx(t).epsilon(1e-13));
  }
  CHECK_THROWS(duhamel_solve(one, false, 1));
  CHECK_THROWS(duhamel_solve(one, false, 0));
  const ScalarField7 ud = duhamel_solve(one, true, 4);
  CHECK(ud(0.7, {0, 0, 0}, {0, 0, 0}) == doctest::Approx(1 - std::exp(-0.7)).epsilon(1e-12));
}

TEST_CASE("duhamel: bump source against adaptive Simpson") {
  const BumpSpec s = sample_spec();
  const ScalarField7 f = bump_field(s, kDomain);
  const ScalarField7 u = duhamel_solve(f);
  CounterStream rng(17, 1);
  for (int k = 0; k < 10; ++k) {
    const PhasePoint pt = random_interior(rng, s);
    const Vec3 v = velocity(pt.p);
    const double ref = oracle::simpson_pieces(
        [&](double sv) { return f(sv, pt.x + (sv - pt.t) * v, pt.p); }, 0.0, pt.t, 1e-12, 64);
    REQUIRE(std::fabs(ref) > 1e-6);
    CHECK(std::fabs(u(pt.t, pt.x, pt.p) - ref) <= 1e-8 * std::fabs(ref));
  }
}

TEST_CASE("duhamel: transport pair reproduces the exact solution") {
  for (int i = 0; i < 3; ++i) {
    const BumpSpec s = random_bump_spec(kDomain, 9, i);
    const TransportPair pair = transport_source(s, kDomain);
    const ScalarField7 u = duhamel_solve(pair.f);
    CounterStream rng(23, i);
    for (int k = 0; k < 20; ++k) {
      const PhasePoint pt = random_interior(rng, s);
      CHECK(std::fabs(u(pt.t, pt.x, pt.p) - pair.u(pt.t, pt.x, pt.p)) < 1e-9);
    }
    // Past the source window the solution is exactly back to zero.
    CHECK(std::fabs(u(0.95, s.x_center, s.p_center)) < 1e-10);
  }
}

TEST_CASE("transport residual converges at second order") {
  const BumpSpec s = sample_spec();
  const ScalarField7 f = bump_field(s, kDomain);
  const ScalarField7 u = duhamel_solve(f);
  const std::vector<double> hs{1e-2, 5e-3, 2.5e-3};
  CounterStream rng(31, 0);
  for (int k = 0; k < 10; ++k) {
    const PhasePoint pt = random_interior(rng, s);
    std::vector<double> lx, ly;
    for (double h : hs) {
      lx.push_back(std::log(h));
      ly.push_back(std::log(std::fabs(transport_residual(u, f, pt, h))));
    }
    CHECK(oracle::fit_slope(lx, ly) == doctest::Approx(2.0).epsilon(0.1));
  }
  const SupportBox box{1.0, {0.1, 0.9}, {{-1, -1, -1}, {1, 1, 1}}, 1.0};
  const ScalarField7 z = zero_field(box);
  CHECK(transport_residual(z, z, {0.5, {}, {}}, 1e-3) == 0.0);
}

TEST_CASE("damped round trip and damped residual") {
  const BumpSpec s = sample_spec();
  const ScalarField7 f = bump_field(s, kDomain);
  const ScalarField7 u = duhamel_solve(f);
  const std::vector<ScalarField7> terms{u, f};
  const std::vector<double> ones{1.0, 1.0};
  const ScalarField7 h = linear_combination(terms, ones);
  const ScalarField7 ud = duhamel_solve(h, DuhamelOptions{true, 4, 64});
  CounterStream rng(37, 0);
  for (int k = 0; k < 4; ++k) {
    const PhasePoint pt = random_interior(rng, s);
    CHECK(std::fabs(ud(pt.t, pt.x, pt.p) - u(pt.t, pt.x, pt.p)) < 1e-9);
    std::vector<double> lx, ly;
    for (double hh : {1e-2, 5e-3, 2.5e-3}) {
      lx.push_back(std::log(hh));
      ly.push_back(std::log(std::fabs(transport_residual(ud, h, pt, hh, TransportForm::damped))));
    }
    CHECK(oracle::fit_slope(lx, ly) == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("duhamel is linear in the source") {
  const ScalarField7 f = bump_field(sample_spec(), kDomain);
  const ScalarField7 g = bump_field(random_bump_spec(kDomain, 4, 0), kDomain);
  const std::vector<ScalarField7> terms{f, g};
  const std::vector<double> c{2.5, -0.75};
  const ScalarField7 uf = duhamel_solve(f);
  const ScalarField7 ug = duhamel_solve(g);
  const ScalarField7 ufg = duhamel_solve(linear_combination(terms, c));
  CounterStream rng(41, 0);
  for (int k = 0; k < 20; ++k) {
    const PhasePoint pt = random_interior(rng, sample_spec());
    const double lhs = ufg(pt.t, pt.x, pt.p);
    const double rhs = 2.5 * uf(pt.t, pt.x, pt.p) - 0.75 * ug(pt.t, pt.x, pt.p);
    CHECK(std::fabs(lhs - rhs) < 1e-8 * (std::fabs(rhs) + 1e-3));
  }
}

TEST_CASE("momentum average") {
  const BallRule rule = make_ball_rule(Ball3{{}, 1.0});
  const SupportBox box{1.0, {0.0, 1.0}, {{-1, -1, -1}, {1, 1, 1}}, 1.0};
  CHECK(momentum_average(zero_field(box), 0.5, {}, rule) == 0.0);
  CHECK(std::fabs(momentum_average(constant_field(1.0, box), 0.5, {}, rule) -
                  4 * std::numbers::pi / 3) < 1e-6);

  const ScalarField7 gauss(
      [](double, const Vec3&, const Vec3& p) { return std::exp(-norm2(p)); }, box);
  const double ref = 4 * std::numbers::pi *
                     oracle::simpson([](double r) { return r * r * std::exp(-r * r); }, 0, 1, 1e-14);
  CHECK(std::fabs(momentum_average(gauss, 0.5, {}, rule) - ref) < 1e-8);

  // Support in B_{1/2}: enlarging the quadrature ball does not change the value.
  const ScalarField7 inner(
      [](double, const Vec3&, const Vec3& p) {
        const double a = 0.25 - norm2(p);
        return a > 0 ? std::pow(a, 8) * (1 + p[0]) : 0.0;
      },
      SupportBox{1.0, {0.0, 1.0}, {{-1, -1, -1}, {1, 1, 1}}, 0.5});
  const double small = momentum_average(inner, 0.5, {}, make_ball_rule(Ball3{{}, 0.5}));
  const double large = momentum_average(inner, 0.5, {}, make_ball_rule(Ball3{{}, 1.0}, 48, 32, 64));
  CHECK(std::fabs(small - large) < 1e-10);
}

TEST_CASE("materialized averages: layout, support and determinism") {
  const BumpSpec s = random_bump_spec(kDomain, 2, 0);
  const ScalarField7 f = transport_source(s, kDomain).f;
  const GridSpec grid = grid_for(f, 10, 10);
  CHECK_NOTHROW(validate_grid(grid, f));
  CHECK_THROWS(grid_for(f, 7, 10));
  GridSpec shrunk = grid;
  shrunk.x_box = f.support().x;
  CHECK_THROWS(validate_grid(shrunk, f));

  MaterializeOptions opt;
  opt.n_radial = 6;
  opt.n_polar = 6;
  opt.n_azimuthal = 12;
  const AverageGrid4 a = materialize_average(f, grid, opt);
  opt.exec.threads = 3;
  const AverageGrid4 b = materialize_average(f, grid, opt);
  CHECK(a.values == b.values);
  CHECK(!a.metadata.empty());

  double peak = 0.0;
  for (double v : a.values) peak = std::max(peak, std::fabs(v));
  CHECK(peak > 0.0);
  const auto& n = grid.n;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k)
        for (int l = 0; l < n[3]; ++l) {
          const bool edge = i == 0 || i == n[0] - 1 || j == 0 || j == n[1] - 1 || k == 0 ||
                            k == n[2] - 1 || l == 0 || l == n[3] - 1;
          if (edge) CHECK(std::fabs(a.at(i, j, k, l)) <= 1e-8 * peak);
        }

  // Direct evaluation at one interior node, bit for bit.
  const ScalarField7 u = duhamel_solve(f, opt.duhamel);
  const BallRule rule = materialization_rule(f, opt);
  const Vec3 x{grid.coord(1, 5), grid.coord(2, 4), grid.coord(3, 5)};
  CHECK(a.at(5, 5, 4, 5) == momentum_average(u, grid.coord(0, 5), x, rule));

  const AverageGrid4 z = materialize_average(zero_field(f.support()), grid, opt);
  for (double v : z.values) CHECK(v == 0.0);
}

TEST_CASE("sub-luminal propagation of the average") {
  const BumpSpec s = sample_spec();
  const ScalarField7 f = bump_field(s, kDomain);
  const ScalarField7 u = duhamel_solve(f);
  const BallRule rule = make_ball_rule(Ball3{{}, 1.0}, 8, 8, 16);
  const Box3 xb = f.support().x;
  CounterStream rng(43, 0);
  for (int k = 0; k < 200; ++k) {
    const double t = rng.uniform();
    // A point just outside x_box dilated by t, on a random face.
    Vec3 x;
    for (int a = 0; a < 3; ++a) x[a] = xb.lo[a] - t + (xb.hi[a] - xb.lo[a] + 2 * t) * rng.uniform();
    const int face = static_cast<int>(rng.uniform() * 3);
    x[face] = rng.uniform() < 0.5 ? xb.lo[face] - t - 1e-9 : xb.hi[face] + t + 1e-9;
    CHECK(momentum_average(u, t, x, rule) == 0.0);
  }
}

TEST_CASE("grid binary round trip") {
  GridSpec g;
  g.t_axis = {0, 1};
  g.x_box = {{-1, -2, -3}, {1, 2, 3}};
  g.n = {8, 9, 10, 11};
  AverageGrid4 a = zero_grid(g);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] = std::sin(0.1 * i);
  a.metadata = "test grid";
  const auto path = std::filesystem::temp_directory_path() / "velavg_grid_io.bin";
  write_grid(path, a);
  const AverageGrid4 b = read_grid(path);
  CHECK(b.grid.n == g.n);
  CHECK(b.grid.x_box.hi[2] == 3.0);
  CHECK(b.values == a.values);
  CHECK(b.metadata == "test grid");
  CHECK_THROWS(read_grid(path.string() + ".missing"));
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".meta");
}

TEST_CASE("seeded families") {
  for (FieldKind kind : {FieldKind::zero, FieldKind::bump, FieldKind::transport_bump}) {
    const auto fam = make_family(FamilySpec{kind, 8, 5, 1.0}, kDomain);
    CHECK(fam.size() == 5);
    CHECK(parse_field_kind(to_string(kind)) == kind);
  }
  CHECK_THROWS(parse_field_kind("gaussian"));
  const BumpSpec a = random_bump_spec(kDomain, 8, 3);
  const BumpSpec b = random_bump_spec(kDomain, 8, 3);
  CHECK(a.t_center == b.t_center);
  CHECK(a.p_width == b.p_width);
}
