#include "velavg/cli/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <boost/version.hpp>
#include <fftw3.h>

#include "velavg/bounds/checks.hpp"
#include "velavg/bounds/constants.hpp"
#include "velavg/bounds/scaling.hpp"
#include "velavg/bounds/split.hpp"
#include "velavg/cli/svg.hpp"
#include "velavg/geometry/slice.hpp"
#include "velavg/norms/gagliardo.hpp"
#include "velavg/norms/spectral.hpp"

namespace velavg {

namespace {

using nlohmann::json;

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  // splitmix64 finalizer over a simple combination.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (a + 1) + 0xBF58476D1CE4E5B9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string q_name(double q) { return std::isinf(q) ? "inf" : fmt(q); }

bool wants(const RunConfig& c, const std::string& name) { return c.experiments.count(name) > 0; }

CheckResources resources(const RunConfig& c, std::uint64_t job) {
  CheckResources r;
  r.nt = c.nt;
  r.nx = c.nx;
  r.pad = c.pad;
  r.materialize.duhamel = DuhamelOptions{false, c.duhamel_order, c.duhamel_panels};
  r.materialize.n_radial = c.n_radial;
  r.materialize.n_polar = c.n_polar;
  r.materialize.n_azimuthal = c.n_azimuthal;
  r.materialize.exec = Exec{1};
  r.phase_sampler = SamplerSpec{SamplerKind::sobol, 7, mix(c.sampler_seed, job, 7),
                                c.sampler_shifts, c.phase_log2};
  r.pair_sampler = SamplerSpec{SamplerKind::sobol, 8, mix(c.sampler_seed, job, 8),
                               c.sampler_shifts, c.pair_log2};
  return r;
}

json direction_json(const Direction4& d) {
  return {{"e_prime", d.e_prime}, {"e", {d.e[0], d.e[1], d.e[2]}}};
}

// Per-direction results of the lemma sweeps.
struct SweepResult {
  std::vector<BoundReport> lemma3;
  std::vector<BoundReport> lemma4;
};

SweepResult run_direction(const RunConfig& c, int d) {
  SweepResult out;
  const Direction4 dir = sample_direction4(c.direction_seed, static_cast<std::uint64_t>(d));
  const double R = c.lemma_radius;
  const double cr = c_r(R);
  const Exec serial{1};
  char tag[16];
  std::snprintf(tag, sizeof tag, "d%03d", d);
  if (wants(c, "lemma3")) {
    const std::uint64_t seed = mix(c.direction_seed, d, 3);
    const auto m = measure_slice_sweep(dir, c.eps_sweep, R, c.lemma_points, seed, serial);
    for (std::size_t j = 0; j < c.eps_sweep.size(); ++j) {
      const double eps = c.eps_sweep[j];
      json p{{"direction", d},     {"eps", eps},           {"R", R},
             {"c_r", cr},          {"hits", m[j].hits},    {"n_points", m[j].n_samples},
             {"point_seed", seed}, {"unit", direction_json(dir)}};
      out.lemma3.push_back(make_report("lemma3/" + std::string(tag) + "/eps=" + fmt(eps),
                                       m[j].measure, cr * eps, m[j].std_error, p));
    }
  }
  if (wants(c, "lemma4")) {
    const std::uint64_t seed = mix(c.direction_seed, d, 4);
    const auto mc = lemma4_mc_sweep(dir, c.eps_sweep, R, c.lemma_points, seed, serial);
    for (std::size_t j = 0; j < c.eps_sweep.size(); ++j) {
      const double eps = c.eps_sweep[j];
      const double reduced = lemma4_integral_reduced(dir, eps, R);
      const double z = mc[j].std_error > 0.0 ? (mc[j].value - reduced) / mc[j].std_error
                                             : (mc[j].value == reduced ? 0.0 : 1e300);
      json p{{"direction", d},
             {"eps", eps},
             {"R", R},
             {"c_r", cr},
             {"mc", {{"value", mc[j].value}, {"std_error", mc[j].std_error},
                     {"n_points", mc[j].n_samples}, {"point_seed", seed}}},
             {"z", z},
             {"unit", direction_json(dir)}};
      // The reduced integral is a deterministic quadrature: no error bar.
      out.lemma4.push_back(make_report("lemma4/" + std::string(tag) + "/eps=" + fmt(eps), reduced,
                                       2.0 * cr / eps, 0.0, p));
    }
  }
  return out;
}

json scaling_json(const ScalingReport& r, const ScalingOptions& o) {
  json pts = json::array();
  for (const ScalingPoint& p : r.points) {
    pts.push_back({{"lambda", p.lambda},
                   {"seminorm", p.seminorm},
                   {"seminorm_std_error", p.seminorm_std_error},
                   {"lp_norm", p.lp_norm}});
  }
  return {{"method", r.method},
          {"s", o.s},
          {"p", o.p_exp},
          {"source_scaling", "f_l(t,x,p) = l f(l t, l x, p), so u_l(t,x,p) = u(l t, l x, p)"},
          {"points", pts},
          {"seminorm_fit", {{"slope", r.seminorm_fit.slope},
                            {"intercept", r.seminorm_fit.intercept},
                            {"slope_std_error", r.seminorm_fit.slope_std_error},
                            {"target", r.seminorm_target}}},
          {"lp_fit", {{"slope", r.lp_fit.slope},
                      {"intercept", r.lp_fit.intercept},
                      {"slope_std_error", r.lp_fit.slope_std_error},
                      {"target", r.lp_target}}},
          {"grid", {r.grid.n[0], r.grid.n[1], r.grid.n[2], r.grid.n[3]}},
          {"materialization", r.materialization}};
}

json split_json(const SplitDiagnostic& d) {
  json j{{"I1", d.i1},
         {"I2", d.i2},
         {"cross", d.cross},
         {"unsplit", d.unsplit},
         {"I1_plus_I2", d.i1 + d.i2},
         {"partition_defect", d.partition_defect()},
         {"A", d.a_norm},
         {"B", d.b_norm},
         {"alpha", d.alpha},
         {"alpha_opt", d.alpha_opt},
         {"c_r", d.c_r},
         {"bound1", d.bound1},
         {"bound2", d.bound2},
         {"momentum_nodes", d.momentum_nodes},
         {"grid", {d.grid.n[0], d.grid.n[1], d.grid.n[2], d.grid.n[3]}}};
  if (d.alpha > 0.0) {
    j["combined_bound"] = {{"at_alpha", split_bound(d.alpha, d.a_norm, d.b_norm, d.c_r)},
                           {"at_2alpha", split_bound(2.0 * d.alpha, d.a_norm, d.b_norm, d.c_r)},
                           {"at_half_alpha",
                            split_bound(0.5 * d.alpha, d.a_norm, d.b_norm, d.c_r)}};
  }
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("suite: cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("suite: write to '" + path.string() + "' failed");
}

}  // namespace

bool SuiteResult::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.pass; });
}

std::vector<std::string> SuiteResult::violations() const {
  std::vector<std::string> out;
  for (const BoundReport& r : reports) {
    if (!r.pass) out.push_back(r.name);
  }
  return out;
}

std::string report_text(const SuiteResult& result) { return result.document.dump(2) + "\n"; }

int suite_exit_code(const SuiteResult& result) { return result.all_pass() ? 0 : 1; }

SuiteResult run_suite(const RunConfig& c, bool write_outputs) {
  c.validate();
  const auto started = std::chrono::steady_clock::now();
  const Exec exec{c.threads};
  const std::vector<SourceCase> family = make_family(c.family, c.domain);

  const bool need_lemma2 = wants(c, "lemma2");
  const bool need_t1 = wants(c, "theorem1");
  const bool need_eq = wants(c, "norm-equivalence");
  int n_prepared = 0;
  if (need_lemma2) n_prepared = std::max(n_prepared, c.lemma2_sources);
  if (need_t1) n_prepared = std::max(n_prepared, c.theorem1_sources);
  if (need_eq) n_prepared = std::max(n_prepared, c.equivalence_sources);
  const int n_lq = wants(c, "lq-bounds") ? c.lq_sources : 0;
  const int n_dirs = (wants(c, "lemma3") || wants(c, "lemma4")) ? c.directions : 0;

  // Phase 1: independent jobs (direction sweeps, source preparation, damped
  // L^q checks, scaling, split), each writing its own slot.
  std::vector<SweepResult> sweeps(n_dirs);
  std::vector<std::optional<PreparedSource>> prepared(n_prepared);
  std::vector<std::vector<BoundReport>> lq(n_lq);
  std::optional<ScalingReport> scaling;
  ScalingOptions scaling_opt;
  std::optional<SplitDiagnostic> split;
  std::vector<std::function<void()>> jobs;
  for (int d = 0; d < n_dirs; ++d) jobs.push_back([&, d] { sweeps[d] = run_direction(c, d); });
  for (int i = 0; i < n_prepared; ++i) {
    jobs.push_back([&, i] { prepared[i] = prepare_source(family[i].source, resources(c, 100 + i)); });
  }
  for (int i = 0; i < n_lq; ++i) {
    jobs.push_back([&, i] {
      lq[i] = check_lq_bounds(family[i].source, c.lq_exponents, resources(c, 200 + i));
    });
  }
  const bool zero_family = c.family.kind == FieldKind::zero;
  if (wants(c, "scaling") && !zero_family) {
    scaling_opt.lambdas = c.lambdas;
    scaling_opt.s = c.scaling_s;
    scaling_opt.p_exp = c.scaling_p;
    scaling_opt.nt = c.scaling_nt;
    scaling_opt.nx = c.scaling_nx;
    scaling_opt.pad = c.pad;
    scaling_opt.materialize = resources(c, 300).materialize;
    scaling_opt.materialize.n_radial = c.scaling_radial;
    scaling_opt.materialize.n_polar = c.scaling_polar;
    scaling_opt.materialize.n_azimuthal = c.scaling_azimuthal;
    scaling_opt.pair_sampler = resources(c, 300).pair_sampler;
    jobs.push_back([&] {
      const TransportPair pair = transport_source(c.scaling_bump, c.domain);
      scaling = scaling_experiment(pair.f, scaling_opt);
    });
  }
  if (wants(c, "fourier-split")) {
    jobs.push_back([&] {
      SplitOptions o;
      o.nt = c.split_nt;
      o.nx = c.split_nx;
      o.pad = c.pad;
      o.n_radial = c.split_radial;
      o.n_polar = c.split_polar;
      o.n_azimuthal = c.split_azimuthal;
      o.alpha = c.split_alpha;
      o.duhamel = DuhamelOptions{false, c.duhamel_order, c.duhamel_panels};
      o.exec = Exec{1};
      split = fourier_split_diag(family[0].source, o);
    });
  }
  parallel_for(jobs.size(), exec, [&](std::size_t j) { jobs[j](); }, 1);

  // Phase 2: checks on the prepared sources.
  std::vector<std::optional<BoundReport>> lemma2(need_lemma2 ? c.lemma2_sources : 0);
  std::vector<std::optional<BoundReport>> theorem1(
      need_t1 ? c.theorem1_sources * c.theorem1_ps.size() : 0);
  struct Equivalence {
    double gagliardo = 0.0;
    double gagliardo_se = 0.0;
    double fourier = 0.0;
  };
  std::vector<Equivalence> equivalence(need_eq ? c.equivalence_sources : 0);
  jobs.clear();
  for (std::size_t i = 0; i < lemma2.size(); ++i) {
    jobs.push_back([&, i] { lemma2[i] = check_lemma2(*prepared[i], resources(c, 400 + i)); });
  }
  for (std::size_t k = 0; k < theorem1.size(); ++k) {
    jobs.push_back([&, k] {
      const std::size_t i = k / c.theorem1_ps.size();
      const auto [p, s] = c.theorem1_ps[k % c.theorem1_ps.size()];
      theorem1[k] = check_theorem1(*prepared[i], s, p, resources(c, 500 + k));
    });
  }
  for (std::size_t i = 0; i < equivalence.size(); ++i) {
    jobs.push_back([&, i] {
      const CheckResources r = resources(c, 600 + i);
      const SeminormEstimate g = gagliardo_mc(prepared[i]->average, 0.5, 2.0,
                                              SeminormVariant::gagliardo, r.pair_sampler, Exec{1});
      equivalence[i] = {g.value, g.std_error,
                        hs_norm_fourier(fft4(prepared[i]->average, c.pad), 0.5)};
    });
  }
  parallel_for(jobs.size(), exec, [&](std::size_t j) { jobs[j](); }, 1);

  // Assembly, in a fixed order.
  SuiteResult result;
  json estimates = json::object();
  if (n_dirs > 0) {
    json l3 = json::array();
    json l4 = json::array();
    int outside = 0;
    int cases = 0;
    double max_abs_z = 0.0;
    for (const SweepResult& s : sweeps) {
      for (const BoundReport& r : s.lemma3) result.reports.push_back(r);
    }
    for (const SweepResult& s : sweeps) {
      for (const BoundReport& r : s.lemma4) {
        result.reports.push_back(r);
        const double z = std::fabs(r.parameters.at("z").get<double>());
        ++cases;
        outside += z > 3.0;
        max_abs_z = std::max(max_abs_z, z);
      }
    }
    if (wants(c, "lemma3")) {
      double worst = 0.0;
      for (const SweepResult& s : sweeps) {
        for (const BoundReport& r : s.lemma3) worst = std::max(worst, r.lhs / r.rhs);
      }
      estimates["lemma3"] = {{"directions", c.directions},
                             {"eps", c.eps_sweep},
                             {"points_per_direction", c.lemma_points},
                             {"c_r", c_r(c.lemma_radius)},
                             {"max_measure_over_bound", worst}};
    }
    if (wants(c, "lemma4")) {
      double worst = 0.0;
      for (const SweepResult& s : sweeps) {
        for (const BoundReport& r : s.lemma4) worst = std::max(worst, r.lhs / r.rhs);
      }
      estimates["lemma4"] = {{"directions", c.directions},
                             {"eps", c.eps_sweep},
                             {"points_per_direction", c.lemma_points},
                             {"max_integral_over_bound", worst},
                             {"agreement", {{"cases", cases},
                                            {"outside_3sigma", outside},
                                            {"max_abs_z", max_abs_z}}}};
    }
  }
  if (need_lemma2) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lemma2.size(); ++i) {
      BoundReport r = *lemma2[i];
      r.name = "lemma2/" + family[i].label;
      r.parameters["source"] = family[i].label;
      worst = std::max(worst, r.parameters.at("ratio").get<double>());
      result.reports.push_back(r);
    }
    estimates["lemma2"] = {{"sources", c.lemma2_sources}, {"max_ratio", worst}};
  }
  for (int i = 0; i < n_lq; ++i) {
    for (std::size_t j = 0; j < lq[i].size(); ++j) {
      BoundReport r = lq[i][j];
      r.name = "lq/" + family[i].label + "/q=" + q_name(c.lq_exponents[j]);
      r.parameters["source"] = family[i].label;
      result.reports.push_back(r);
    }
  }
  if (need_t1) {
    for (std::size_t k = 0; k < theorem1.size(); ++k) {
      BoundReport r = *theorem1[k];
      const std::size_t i = k / c.theorem1_ps.size();
      const auto [p, s] = c.theorem1_ps[k % c.theorem1_ps.size()];
      r.name = "theorem1/" + family[i].label + "/p=" + fmt(p) + ",s=" + fmt(s);
      r.parameters["source"] = family[i].label;
      result.reports.push_back(r);
    }
  }
  if (need_eq) {
    json rows = json::array();
    std::vector<double> ratios;
    for (std::size_t i = 0; i < equivalence.size(); ++i) {
      const Equivalence& e = equivalence[i];
      const double ratio = e.fourier > 0.0 ? e.gagliardo / e.fourier : 0.0;
      ratios.push_back(ratio);
      rows.push_back({{"source", family[i].label},
                      {"gagliardo", e.gagliardo},
                      {"gagliardo_std_error", e.gagliardo_se},
                      {"fourier", e.fourier},
                      {"ratio", ratio}});
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    estimates["norm_equivalence"] = {
        {"s", 0.5},
        {"p", 2.0},
        {"fields", rows},
        {"mean_ratio", mean},
        {"relative_spread", mean > 0.0 ? (*hi - *lo) / mean : 0.0}};
  }
  if (wants(c, "scaling")) {
    if (scaling) {
      const json sj = scaling_json(*scaling, scaling_opt);
      estimates["scaling"] = sj;
      const double d1 = std::fabs(scaling->seminorm_fit.slope - scaling->seminorm_target);
      const double d2 = std::fabs(scaling->lp_fit.slope - scaling->lp_target);
      result.reports.push_back(make_report(
          "scaling/seminorm-slope", d1, c.scaling_tolerance, 0.0,
          {{"slope", scaling->seminorm_fit.slope}, {"target", scaling->seminorm_target}}));
      result.reports.push_back(
          make_report("scaling/lp-slope", d2, c.scaling_tolerance, 0.0,
                      {{"slope", scaling->lp_fit.slope}, {"target", scaling->lp_target}}));
    } else {
      estimates["scaling"] = {{"skipped", "zero source family"}};
    }
  }
  if (split) {
    estimates["fourier_split"] = split_json(*split);
    estimates["fourier_split"]["source"] = family[0].label;
    result.reports.push_back(make_report("split/I1", split->i1, split->bound1, 0.0,
                                         {{"alpha", split->alpha}, {"source", family[0].label}}));
    result.reports.push_back(make_report("split/I2", split->i2, split->bound2, 0.0,
                                         {{"alpha", split->alpha}, {"source", family[0].label}}));
  }

  json reports = json::array();
  for (const BoundReport& r : result.reports) reports.push_back(to_json(r));
  std::vector<std::string> config_lines;
  {
    std::istringstream is(render_config(c));
    std::string line;
    while (std::getline(is, line)) {
      if (line.rfind("threads", 0) == 0 || line.rfind("output", 0) == 0) continue;
      config_lines.push_back(line);
    }
  }
  const ConstantsRegistry k = constants(c.domain.T, c.domain.R, 2.0);
  json family_json = json::array();
  for (const SourceCase& s : family) {
    const BumpSpec& b = s.bump;
    family_json.push_back({{"label", s.label},
                           {"t_center", b.t_center},
                           {"t_width", b.t_width},
                           {"x_center", {b.x_center[0], b.x_center[1], b.x_center[2]}},
                           {"x_width", b.x_width},
                           {"p_center", {b.p_center[0], b.p_center[1], b.p_center[2]}},
                           {"p_width", b.p_width},
                           {"amplitude", b.amplitude}});
  }
  json provenance = json::object();
  provenance["fftw"] = std::string(fftw_version);
  provenance["boost"] = std::string(BOOST_LIB_VERSION);
  provenance["constants_q2"] = {{"C1", k.C1}, {"C2", k.C2}, {"C3", k.C3}, {"C4", k.C4},
                                {"C5", k.C5}, {"C6", k.C6}, {"C_R", k.C_R}};
  provenance["family"] = family_json;
  json doc = json::object();
  doc["format"] = "velavg-report/1";
  doc["config"] = config_lines;
  doc["provenance"] = provenance;
  doc["all_pass"] = result.all_pass();
  doc["reports"] = reports;
  doc["estimates"] = estimates;
  result.document = std::move(doc);

  if (!write_outputs) return result;

  namespace fs = std::filesystem;
  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("suite: cannot create '" + dir.string() + "': " + ec.message());
  auto out = [&](const std::string& name) {
    result.files.push_back((dir / name).string());
    return dir / name;
  };
  write_text(out("report.json"), report_text(result));
  write_text(out("summary.csv"), summary_csv(result.reports));

  if (wants(c, "lemma3")) {
    Plot p;
    p.title = "Slice measure against eps";
    p.x_label = "eps";
    p.y_label = "mes(E_R)";
    p.log_x = p.log_y = true;
    Series s{"MC estimate", {}, {}, false};
    for (const SweepResult& sw : sweeps) {
      for (const BoundReport& r : sw.lemma3) {
        if (r.lhs > 0.0) {
          s.x.push_back(r.parameters.at("eps").get<double>());
          s.y.push_back(r.lhs);
        }
      }
    }
    if (s.x.empty()) {
      s.x.push_back(c.eps_sweep.front());
      s.y.push_back(c_r(c.lemma_radius) * c.eps_sweep.front());
    }
    p.series.push_back(s);
    const double cr = c_r(c.lemma_radius);
    p.lines.push_back({"C_R eps", [cr](double e) { return cr * e; }});
    emit_svg(p, out("lemma3_measure.svg"));
  }
  if (scaling) {
    Plot p;
    p.title = "Scaling of the averaged solution";
    p.x_label = "lambda";
    p.y_label = "norm";
    p.log_x = p.log_y = true;
    Series semi{"seminorm", {}, {}, true};
    Series lp{"L^p norm", {}, {}, true};
    for (const ScalingPoint& pt : scaling->points) {
      semi.x.push_back(pt.lambda);
      semi.y.push_back(pt.seminorm);
      lp.x.push_back(pt.lambda);
      lp.y.push_back(pt.lp_norm);
    }
    p.series = {semi, lp};
    const SlopeFit fs = scaling->seminorm_fit;
    const SlopeFit fl = scaling->lp_fit;
    const double ts = scaling->seminorm_target;
    const double tl = scaling->lp_target;
    // Target-slope lines through the data's centroid in log-log coordinates.
    auto through = [](const SlopeFit& f, double slope, const std::vector<double>& x) {
      double mx = 0.0;
      for (double v : x) mx += std::log(v);
      mx /= static_cast<double>(x.size());
      const double my = f.intercept + f.slope * mx;
      return [=](double l) { return std::exp(my + slope * (std::log(l) - mx)); };
    };
    p.lines.push_back({"target slope " + fmt(ts), through(fs, ts, semi.x)});
    p.lines.push_back({"target slope " + fmt(tl), through(fl, tl, lp.x)});
    emit_svg(p, out("scaling.svg"));
  }
  {
    BarChart bars;
    bars.title = "Relative margins (rhs - lhs) / rhs";
    bars.y_label = "relative margin";
    for (const BoundReport& r : result.reports) {
      if (r.name.rfind("lemma3/", 0) == 0 || r.name.rfind("lemma4/", 0) == 0) continue;
      bars.labels.push_back(r.name);
      bars.values.push_back(r.rhs > 0.0 ? r.margin / r.rhs : 0.0);
    }
    if (!bars.values.empty()) emit_svg(bars, out("margins.svg"));
  }

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::ostringstream meta;
  const std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  meta << "finished_utc=" << stamp << '\n'
       << "wall_seconds=" << elapsed << '\n'
       << "threads=" << exec.resolved() << '\n'
       << "output=" << c.output_dir << '\n'
       << "all_pass=" << (result.all_pass() ? "true" : "false") << '\n';
  write_text(out("run-meta.txt"), meta.str());
  return result;
}

}  // namespace velavg
