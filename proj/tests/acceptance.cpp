// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here,
// not read from the config. Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "velavg/bounds/split.hpp"
#include "velavg/cli/config.hpp"
#include "velavg/cli/suite.hpp"
#include "velavg/kinetic/bump.hpp"
#include "velavg/kinetic/duhamel.hpp"
#include "velavg/numerics/rng.hpp"

using namespace velavg;
namespace fs = std::filesystem;

namespace {

constexpr double kMaxAbsZ = 3.0;             // criterion 2
constexpr double kSlopeTarget = 2.0;         // criterion 3
constexpr double kSlopeTol = 0.2;            // criterion 3
constexpr double kScalingTol = 0.05;         // criterion 6
constexpr double kMinPairsLog2 = 22.0;       // criterion 7
constexpr double kPartitionRelTol = 1e-10;   // criterion 8
constexpr double kSpreadTol = 0.10;          // criterion 9

int failures = 0;

void line(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

struct Tally {
  int count = 0;
  int bad = 0;
  double worst_ratio = 0.0;       // max lhs / rhs
  double min_net_margin = 1e300;  // min margin - 3 mc_error
};

Tally tally(const SuiteResult& r, const std::string& prefix, bool strict) {
  Tally t;
  for (const BoundReport& b : r.reports) {
    if (!starts_with(b.name, prefix)) continue;
    ++t.count;
    const double net = b.net_margin();
    t.min_net_margin = std::min(t.min_net_margin, net);
    if (b.rhs > 0.0) t.worst_ratio = std::max(t.worst_ratio, b.lhs / b.rhs);
    const bool ok = strict ? (b.lhs < b.rhs && net > 0.0) : b.pass;
    t.bad += !ok;
  }
  return t;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PhasePoint interior_point(CounterStream& rng, const BumpSpec& s) {
  PhasePoint pt;
  pt.t = s.t_center + s.t_width * (0.8 * rng.uniform() - 0.1);
  for (int i = 0; i < 3; ++i) {
    pt.x[i] = s.x_center[i] + 0.3 * s.x_width * (2.0 * rng.uniform() - 1.0);
    pt.p[i] = s.p_center[i] + 0.3 * s.p_width * (2.0 * rng.uniform() - 1.0);
  }
  return pt;
}

void transport_consistency(const RunConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> hs{0.02, 0.01, 0.005, 0.0025};
  const DuhamelOptions opt{false, c.duhamel_order, c.duhamel_panels};
  int bad = 0;
  int points = 0;
  double lo = 1e300;
  double hi = -1e300;
  for (int i = 0; i < 5; ++i) {
    const BumpSpec spec = random_bump_spec(c.domain, c.family.seed, i, c.family.amplitude);
    const ScalarField7 f = bump_field(spec, c.domain);
    const ScalarField7 u = duhamel_solve(f, opt);
    CounterStream rng(c.family.seed, 0x7E57ULL + i);
    for (int k = 0; k < 10; ++k) {
      const PhasePoint pt = interior_point(rng, spec);
      std::vector<double> lx, ly;
      for (double h : hs) {
        lx.push_back(std::log(h));
        ly.push_back(std::log(std::fabs(transport_residual(u, f, pt, h))));
      }
      const double slope = oracle::fit_slope(lx, ly);
      ++points;
      lo = std::min(lo, slope);
      hi = std::max(hi, slope);
      bad += !(std::fabs(slope - kSlopeTarget) <= kSlopeTol);
    }
  }
  line(3, bad == 0,
       std::to_string(points) + " points, slopes in [" + fmt(lo) + ", " + fmt(hi) +
           "], target 2 +/- 0.2, " + fmt(seconds_since(t0)) + " s");
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "velavg-acceptance";
  fs::remove_all(out);
  RunConfig c;  // the shipped defaults
  c.output_dir = (out / "run1").string();
  std::printf("acceptance: output in %s, %u hardware threads\n", out.c_str(),
              std::thread::hardware_concurrency());

  auto t0 = std::chrono::steady_clock::now();
  const SuiteResult run1 = run_suite(c);
  const double suite_seconds = seconds_since(t0);
  std::printf("acceptance: full suite %.1f s\n", suite_seconds);
  const nlohmann::json& est = run1.document.at("estimates");

  {
    const Tally t = tally(run1, "lemma3/", false);
    line(1, t.count == 1200 && t.bad == 0,
         std::to_string(t.count) + " cases, " + std::to_string(t.bad) +
             " above c_r*eps + 3 sigma, max mes/(c_r eps) = " + fmt(t.worst_ratio));
  }
  {
    const Tally t = tally(run1, "lemma4/", true);
    const auto& a = est.at("lemma4").at("agreement");
    const int outside = a.at("outside_3sigma").get<int>();
    const double zmax = a.at("max_abs_z").get<double>();
    // A direction whose excluded set holds no MC point has sigma = 0; such
    // cases count as outside and are listed separately.
    std::string outliers;
    for (const BoundReport& b : run1.reports) {
      if (!starts_with(b.name, "lemma4/")) continue;
      const double z = b.parameters.at("z").get<double>();
      if (std::fabs(z) <= kMaxAbsZ) continue;
      const double se = b.parameters.at("mc").at("std_error").get<double>();
      outliers += "; " + b.name.substr(7) +
                  (se > 0.0 ? " z=" + fmt(z) : " sigma=0 (no MC hits), reduced " + fmt(b.lhs));
    }
    line(2, t.count == 1200 && t.bad == 0 && outside == 0 && zmax <= kMaxAbsZ,
         std::to_string(t.count) + " cases, " + std::to_string(t.bad) +
             " not strictly below 2 c_r/eps (max ratio " + fmt(t.worst_ratio) + "); MC vs reduced: " +
             std::to_string(outside) + " outside 3 sigma" + outliers);
  }
  transport_consistency(c);
  {
    const Tally t = tally(run1, "lemma2/", true);
    line(4, t.count == 5 && t.bad == 0,
         std::to_string(t.count) + " sources, min net margin " + fmt(t.min_net_margin) +
             ", max lhs/rhs " + fmt(est.at("lemma2").at("max_ratio").get<double>()));
  }
  {
    const Tally t = tally(run1, "lq/", true);
    line(5, t.count == 12 && t.bad == 0,
         std::to_string(t.count) + " (source, q) cases, min net margin " + fmt(t.min_net_margin) +
             ", max lhs/rhs " + fmt(t.worst_ratio));
  }
  {
    const auto& s = est.at("scaling");
    const double s1 = s.at("seminorm_fit").at("slope").get<double>();
    const double s2 = s.at("lp_fit").at("slope").get<double>();
    const bool ok = std::fabs(s1 + 1.5) <= kScalingTol && std::fabs(s2 + 2.0) <= kScalingTol;
    line(6, ok,
         "H^1/2 slope " + fmt(s1) + " (target -1.5), L^2 slope " + fmt(s2) +
             " (target -2), tolerance 0.05");
  }
  {
    const Tally t = tally(run1, "theorem1/", true);
    const double pairs_log2 = std::log2(static_cast<double>(c.sampler_shifts)) + c.pair_log2;
    line(7, t.count == 9 && t.bad == 0 && pairs_log2 >= kMinPairsLog2,
         std::to_string(t.count) + " (source, p, s) cases, 2^" + fmt(pairs_log2) +
             " pairs, min net margin " + fmt(t.min_net_margin) + ", max lhs/rhs " +
             fmt(t.worst_ratio));
  }
  {
    const auto& d = est.at("fourier_split");
    const double defect = d.at("partition_defect").get<double>();
    const double A = d.at("A").get<double>();
    const double B = d.at("B").get<double>();
    const bool bounds = d.at("I1").get<double>() <= d.at("bound1").get<double>() &&
                        d.at("I2").get<double>() <= d.at("bound2").get<double>();
    // The bounds hold for every alpha > 0; also check the alpha = sqrt(A B)
    // form as printed.
    SplitOptions o;
    o.nt = c.split_nt;
    o.nx = c.split_nx;
    o.pad = c.pad;
    o.n_radial = c.split_radial;
    o.n_polar = c.split_polar;
    o.n_azimuthal = c.split_azimuthal;
    o.duhamel = DuhamelOptions{false, c.duhamel_order, c.duhamel_panels};
    o.alpha = std::sqrt(A * B);
    const SplitDiagnostic printed = fourier_split_diag(make_family(c.family, c.domain)[0].source, o);
    const bool printed_ok = printed.i1 <= printed.bound1 && printed.i2 <= printed.bound2;
    const bool nodes = d.at("momentum_nodes").get<int>() == 32;
    line(8, std::fabs(defect) <= kPartitionRelTol && bounds && printed_ok && nodes,
         "|I1 + I2 - unsplit| / unsplit = " + fmt(std::fabs(defect)) + " (tol 1e-10; cross term " +
             fmt(d.at("cross").get<double>()) + "), bounds at sqrt(B/A): " +
             (bounds ? "hold" : "violated") + ", at sqrt(AB): " + (printed_ok ? "hold" : "violated"));
  }
  {
    const auto& e = est.at("norm_equivalence");
    const double spread = e.at("relative_spread").get<double>();
    line(9, e.at("fields").size() == 5 && spread <= kSpreadTol,
         "relative spread " + fmt(spread) + " (tol 0.10), mean ratio " +
             fmt(e.at("mean_ratio").get<double>()));
  }
  {
    RunConfig again = c;
    again.output_dir = (out / "run2").string();
    again.threads = c.threads == 2 ? 3 : 2;
    t0 = std::chrono::steady_clock::now();
    const SuiteResult run2 = run_suite(again);
    const std::string a = slurp(run1.files.front());
    const std::string b = slurp(run2.files.front());
    line(10, !a.empty() && a == b,
         "report.json " + std::to_string(a.size()) + " bytes, rerun with " +
             std::to_string(again.threads) + " threads " + (a == b ? "identical" : "differs") +
             " (" + fmt(seconds_since(t0)) + " s)");
  }
  std::printf("acceptance: %d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
