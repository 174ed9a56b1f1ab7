#include "velavg/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "velavg/bounds/interpolation.hpp"
#include "velavg/norms/gagliardo.hpp"

namespace velavg {

namespace {

std::string describe(const std::string& origin, int line, const std::string& field,
                     const std::string& message) {
  std::ostringstream os;
  os << origin;
  if (line > 0) os << ':' << line;
  if (!field.empty()) os << ": " << field;
  os << ": " << message;
  return os.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(v);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Thrown by value parsers; the caller adds line and key.
struct BadValue {
  std::string message;
};

double to_double(const std::string& v, bool allow_inf = false) {
  if (allow_inf && (v == "inf" || v == "infinity")) {
    return std::numeric_limits<double>::infinity();
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw BadValue{"expected a number, got '" + v + "'"};
  }
  return out;
}

template <class Int>
Int to_int(const std::string& v) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw BadValue{"expected a non-negative integer, got '" + v + "'"};
  }
  return out;
}

std::vector<double> to_doubles(const std::string& v, bool allow_inf = false) {
  std::vector<double> out;
  for (const std::string& item : split_list(v)) out.push_back(to_double(item, allow_inf));
  if (out.empty()) throw BadValue{"expected a nonempty comma-separated list"};
  return out;
}

Vec3 to_vec3(const std::string& v) {
  const std::vector<double> d = to_doubles(v);
  if (d.size() != 3) throw BadValue{"expected three comma-separated numbers"};
  return {d[0], d[1], d[2]};
}

std::string format_double(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_double(v[i]);
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> m;
    m["T"] = [](RunConfig& c, const std::string& v) { c.domain.T = to_double(v); };
    m["eps0"] = [](RunConfig& c, const std::string& v) { c.domain.eps0 = to_double(v); };
    m["R"] = [](RunConfig& c, const std::string& v) { c.domain.R = to_double(v); };
    m["family.kind"] = [](RunConfig& c, const std::string& v) {
      try {
        c.family.kind = parse_field_kind(v);
      } catch (const std::invalid_argument& e) {
        throw BadValue{e.what()};
      }
    };
    m["family.seed"] = [](RunConfig& c, const std::string& v) {
      c.family.seed = to_int<std::uint64_t>(v);
    };
    m["family.count"] = [](RunConfig& c, const std::string& v) { c.family.count = to_int<int>(v); };
    m["family.amplitude"] = [](RunConfig& c, const std::string& v) {
      c.family.amplitude = to_double(v);
    };
    m["grid.nt"] = [](RunConfig& c, const std::string& v) { c.nt = to_int<int>(v); };
    m["grid.nx"] = [](RunConfig& c, const std::string& v) { c.nx = to_int<int>(v); };
    m["grid.pad"] = [](RunConfig& c, const std::string& v) { c.pad = to_int<int>(v); };
    m["momentum.radial"] = [](RunConfig& c, const std::string& v) { c.n_radial = to_int<int>(v); };
    m["momentum.polar"] = [](RunConfig& c, const std::string& v) { c.n_polar = to_int<int>(v); };
    m["momentum.azimuthal"] = [](RunConfig& c, const std::string& v) {
      c.n_azimuthal = to_int<int>(v);
    };
    m["duhamel.order"] = [](RunConfig& c, const std::string& v) {
      c.duhamel_order = to_int<int>(v);
    };
    m["duhamel.panels"] = [](RunConfig& c, const std::string& v) {
      c.duhamel_panels = to_int<int>(v);
    };
    m["sampler.seed"] = [](RunConfig& c, const std::string& v) {
      c.sampler_seed = to_int<std::uint64_t>(v);
    };
    m["sampler.shifts"] = [](RunConfig& c, const std::string& v) {
      c.sampler_shifts = to_int<unsigned>(v);
    };
    m["sampler.phase_log2"] = [](RunConfig& c, const std::string& v) {
      c.phase_log2 = to_int<unsigned>(v);
    };
    m["sampler.pair_log2"] = [](RunConfig& c, const std::string& v) {
      c.pair_log2 = to_int<unsigned>(v);
    };
    m["threads"] = [](RunConfig& c, const std::string& v) { c.threads = to_int<unsigned>(v); };
    m["experiments"] = [](RunConfig& c, const std::string& v) {
      c.experiments.clear();
      for (const std::string& name : split_list(v)) {
        if (name == "all") {
          c.experiments.insert(known_experiments().begin(), known_experiments().end());
          continue;
        }
        bool known = false;
        for (const std::string& k : known_experiments()) known = known || k == name;
        if (!known) throw BadValue{"unknown experiment '" + name + "'"};
        c.experiments.insert(name);
      }
      if (c.experiments.empty()) throw BadValue{"expected at least one experiment"};
    };
    m["lemma.directions"] = [](RunConfig& c, const std::string& v) {
      c.directions = to_int<int>(v);
    };
    m["lemma.seed"] = [](RunConfig& c, const std::string& v) {
      c.direction_seed = to_int<std::uint64_t>(v);
    };
    m["lemma.points"] = [](RunConfig& c, const std::string& v) {
      c.lemma_points = to_int<std::uint64_t>(v);
    };
    m["lemma.R"] = [](RunConfig& c, const std::string& v) { c.lemma_radius = to_double(v); };
    m["lemma.eps"] = [](RunConfig& c, const std::string& v) { c.eps_sweep = to_doubles(v); };
    m["lemma2.sources"] = [](RunConfig& c, const std::string& v) {
      c.lemma2_sources = to_int<int>(v);
    };
    m["lq.q"] = [](RunConfig& c, const std::string& v) { c.lq_exponents = to_doubles(v, true); };
    m["lq.sources"] = [](RunConfig& c, const std::string& v) { c.lq_sources = to_int<int>(v); };
    m["theorem1.ps"] = [](RunConfig& c, const std::string& v) {
      c.theorem1_ps.clear();
      for (const std::string& item : split_list(v)) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw BadValue{"expected p:s pairs, got '" + item + "'"};
        c.theorem1_ps.emplace_back(to_double(trim(item.substr(0, colon))),
                                   to_double(trim(item.substr(colon + 1))));
      }
      if (c.theorem1_ps.empty()) throw BadValue{"expected at least one p:s pair"};
    };
    m["theorem1.sources"] = [](RunConfig& c, const std::string& v) {
      c.theorem1_sources = to_int<int>(v);
    };
    m["equivalence.sources"] = [](RunConfig& c, const std::string& v) {
      c.equivalence_sources = to_int<int>(v);
    };
    m["scaling.lambda"] = [](RunConfig& c, const std::string& v) { c.lambdas = to_doubles(v); };
    m["scaling.s"] = [](RunConfig& c, const std::string& v) { c.scaling_s = to_double(v); };
    m["scaling.p"] = [](RunConfig& c, const std::string& v) { c.scaling_p = to_double(v); };
    m["scaling.nt"] = [](RunConfig& c, const std::string& v) { c.scaling_nt = to_int<int>(v); };
    m["scaling.nx"] = [](RunConfig& c, const std::string& v) { c.scaling_nx = to_int<int>(v); };
    m["scaling.radial"] = [](RunConfig& c, const std::string& v) {
      c.scaling_radial = to_int<int>(v);
    };
    m["scaling.polar"] = [](RunConfig& c, const std::string& v) {
      c.scaling_polar = to_int<int>(v);
    };
    m["scaling.azimuthal"] = [](RunConfig& c, const std::string& v) {
      c.scaling_azimuthal = to_int<int>(v);
    };
    m["scaling.tolerance"] = [](RunConfig& c, const std::string& v) {
      c.scaling_tolerance = to_double(v);
    };
    m["scaling.t_center"] = [](RunConfig& c, const std::string& v) {
      c.scaling_bump.t_center = to_double(v);
    };
    m["scaling.t_width"] = [](RunConfig& c, const std::string& v) {
      c.scaling_bump.t_width = to_double(v);
    };
    m["scaling.x_center"] = [](RunConfig& c, const std::string& v) {
      c.scaling_bump.x_center = to_vec3(v);
    };
    m["scaling.x_width"] = [](RunConfig& c, const std::string& v) {
      c.scaling_bump.x_width = to_double(v);
    };
    m["scaling.p_center"] = [](RunConfig& c, const std::string& v) {
      c.scaling_bump.p_center = to_vec3(v);
    };
    m["scaling.p_width"] = [](RunConfig& c, const std::string& v) {
      c.scaling_bump.p_width = to_double(v);
    };
    m["split.nt"] = [](RunConfig& c, const std::string& v) { c.split_nt = to_int<int>(v); };
    m["split.nx"] = [](RunConfig& c, const std::string& v) { c.split_nx = to_int<int>(v); };
    m["split.radial"] = [](RunConfig& c, const std::string& v) {
      c.split_radial = to_int<int>(v);
    };
    m["split.polar"] = [](RunConfig& c, const std::string& v) { c.split_polar = to_int<int>(v); };
    m["split.azimuthal"] = [](RunConfig& c, const std::string& v) {
      c.split_azimuthal = to_int<int>(v);
    };
    m["split.alpha"] = [](RunConfig& c, const std::string& v) { c.split_alpha = to_double(v); };
    m["output"] = [](RunConfig& c, const std::string& v) {
      if (v.empty()) throw BadValue{"expected a directory"};
      c.output_dir = v;
    };
    return m;
  }();
  return table;
}

}  // namespace

ConfigError::ConfigError(std::string origin, int line, std::string field,
                         const std::string& message)
    : std::runtime_error(describe(origin, line, field, message)),
      origin_(std::move(origin)),
      line_(line),
      field_(std::move(field)) {}

BumpSpec RunConfig::default_scaling_bump() {
  BumpSpec b;
  b.t_center = 0.35;
  b.t_width = 0.18;
  b.x_center = {0.0, 0.0, 0.0};
  b.x_width = 0.6;
  b.p_center = {0.1, 0.0, 0.0};
  b.p_width = 0.5;
  b.amplitude = 1.0;
  return b;
}

void RunConfig::validate(const std::string& origin) const {
  auto fail = [&](const std::string& field, const std::string& msg) {
    throw ConfigError(origin, 0, field, msg);
  };
  if (!(domain.T > 0.0)) fail("T", "must be positive");
  if (!(domain.eps0 > 0.0 && domain.eps0 < 0.5 * domain.T)) {
    fail("eps0", "must satisfy 0 < eps0 < T/2");
  }
  if (!(domain.R > 0.0)) fail("R", "must be positive");
  if (family.count < 1) fail("family.count", "must be >= 1");
  if (!(family.amplitude > 0.0)) fail("family.amplitude", "must be positive");
  if (nt < 8) fail("grid.nt", "must be >= 8");
  if (nx < 8) fail("grid.nx", "must be >= 8");
  if (pad < 1) fail("grid.pad", "must be >= 1");
  if (n_radial < 1) fail("momentum.radial", "must be >= 1");
  if (n_polar < 1) fail("momentum.polar", "must be >= 1");
  if (n_azimuthal < 1) fail("momentum.azimuthal", "must be >= 1");
  if (duhamel_order < 2) fail("duhamel.order", "must be >= 2");
  if (duhamel_panels < 1) fail("duhamel.panels", "must be >= 1");
  if (sampler_shifts < 8) fail("sampler.shifts", "must be >= 8");
  if (phase_log2 < 4 || phase_log2 > 30) fail("sampler.phase_log2", "must lie in [4, 30]");
  if (pair_log2 < 4 || pair_log2 > 30) fail("sampler.pair_log2", "must lie in [4, 30]");
  if (directions < 1) fail("lemma.directions", "must be >= 1");
  if (lemma_points < 10000) fail("lemma.points", "must be >= 10000");
  if (!(lemma_radius > 0.0)) fail("lemma.R", "must be positive");
  for (double e : eps_sweep) {
    if (!(e > 0.0)) fail("lemma.eps", "every eps must be positive");
  }
  auto check_sources = [&](int n, const std::string& field) {
    if (n < 1 || n > family.count) fail(field, "must lie in [1, family.count]");
  };
  check_sources(lemma2_sources, "lemma2.sources");
  check_sources(lq_sources, "lq.sources");
  check_sources(theorem1_sources, "theorem1.sources");
  check_sources(equivalence_sources, "equivalence.sources");
  for (double q : lq_exponents) {
    if (!(q >= 1.0)) fail("lq.q", "every q must be >= 1");
  }
  for (const auto& [p, s] : theorem1_ps) {
    if (!(p > 1.0) || std::isinf(p)) fail("theorem1.ps", "p must lie in (1, inf)");
    if (!admissible_s(p).contains(s)) {
      fail("theorem1.ps", "s = " + format_double(s) + " is not admissible for p = " +
                              format_double(p) + ": need 0 < s < min(1/p, 1 - 1/p)");
    }
  }
  if (lambdas.size() < 2) fail("scaling.lambda", "need at least two values");
  for (double l : lambdas) {
    if (!(l >= 0.5 && l <= 2.0)) fail("scaling.lambda", "every lambda must lie in [1/2, 2]");
  }
  if (scaling_p == 2.0) {
    if (!(scaling_s > 0.0 && scaling_s <= 0.5)) fail("scaling.s", "must lie in (0, 1/2] for p = 2");
  } else if (!gagliardo_admissible(scaling_s, scaling_p)) {
    fail("scaling.s", "(s, p) must satisfy 0 < s < min(1/p, 1 - 1/p)");
  }
  if (scaling_nt < 8) fail("scaling.nt", "must be >= 8");
  if (scaling_nx < 8) fail("scaling.nx", "must be >= 8");
  if (scaling_radial < 1 || scaling_polar < 1 || scaling_azimuthal < 1) {
    fail("scaling.radial", "scaling momentum rule sizes must be >= 1");
  }
  if (!(scaling_tolerance > 0.0)) fail("scaling.tolerance", "must be positive");
  if (split_nt < 8 || split_nt > 16) fail("split.nt", "must lie in [8, 16]");
  if (split_nx < 8 || split_nx > 16) fail("split.nx", "must lie in [8, 16]");
  if (split_radial < 1 || split_polar < 1 || split_azimuthal < 1 ||
      split_radial * split_polar * split_azimuthal > 64) {
    fail("split.radial", "momentum rule must have between 1 and 64 nodes");
  }
  if (!(split_alpha >= 0.0)) fail("split.alpha", "must be >= 0 (0 selects the optimal alpha)");
  if (output_dir.empty()) fail("output", "must not be empty");
  if (family.kind == FieldKind::bump) {
    for (const char* name : {"lemma2", "norm-equivalence", "fourier-split"}) {
      if (experiments.count(name)) {
        fail("family.kind", std::string("experiment ") + name +
                                " transforms in time and needs solutions that vanish at t = T "
                                "(use transport-bump or zero)");
      }
    }
  }
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig c;
  std::map<std::string, int> lines;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin, line_no, "", "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(origin, line_no, key, "unknown key");
    if (lines.count(key)) {
      throw ConfigError(origin, line_no, key,
                        "duplicate key (first set on line " + std::to_string(lines[key]) + ")");
    }
    lines[key] = line_no;
    try {
      it->second(c, value);
    } catch (const BadValue& e) {
      throw ConfigError(origin, line_no, key, e.message);
    }
  }
  try {
    c.validate(origin);
  } catch (const ConfigError& e) {
    const auto it = lines.find(e.field());
    if (it == lines.end()) throw;
    const std::string what = e.what();
    const std::string prefix = origin + ": " + e.field() + ": ";
    throw ConfigError(origin, it->second, e.field(), what.substr(prefix.size()));
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

RunConfig with_overrides(const RunConfig& base, const std::vector<std::string>& assignments) {
  std::map<std::string, std::pair<std::string, int>> values;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    const int pos = static_cast<int>(i) + 1;
    const auto eq = assignments[i].find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set", pos, "", "expected key=value, got '" + assignments[i] + "'");
    }
    const std::string key = trim(assignments[i].substr(0, eq));
    if (!setters().count(key)) throw ConfigError("--set", pos, key, "unknown key");
    values[key] = {trim(assignments[i].substr(eq + 1)), pos};
  }
  RunConfig c = base;
  for (const auto& [key, vp] : values) {
    try {
      setters().at(key)(c, vp.first);
    } catch (const BadValue& e) {
      throw ConfigError("--set", vp.second, key, e.message);
    }
  }
  try {
    c.validate("--set");
  } catch (const ConfigError& e) {
    const auto it = values.find(e.field());
    if (it == values.end()) throw;
    const std::string what = e.what();
    const std::string prefix = std::string("--set: ") + e.field() + ": ";
    throw ConfigError("--set", it->second.second, e.field(), what.substr(prefix.size()));
  }
  return c;
}

std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  auto kv = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto d = [](double v) { return format_double(v); };
  auto vec = [](const Vec3& v) { return join({v[0], v[1], v[2]}); };
  kv("T", d(c.domain.T));
  kv("eps0", d(c.domain.eps0));
  kv("R", d(c.domain.R));
  kv("family.kind", to_string(c.family.kind));
  kv("family.seed", std::to_string(c.family.seed));
  kv("family.count", std::to_string(c.family.count));
  kv("family.amplitude", d(c.family.amplitude));
  kv("grid.nt", std::to_string(c.nt));
  kv("grid.nx", std::to_string(c.nx));
  kv("grid.pad", std::to_string(c.pad));
  kv("momentum.radial", std::to_string(c.n_radial));
  kv("momentum.polar", std::to_string(c.n_polar));
  kv("momentum.azimuthal", std::to_string(c.n_azimuthal));
  kv("duhamel.order", std::to_string(c.duhamel_order));
  kv("duhamel.panels", std::to_string(c.duhamel_panels));
  kv("sampler.seed", std::to_string(c.sampler_seed));
  kv("sampler.shifts", std::to_string(c.sampler_shifts));
  kv("sampler.phase_log2", std::to_string(c.phase_log2));
  kv("sampler.pair_log2", std::to_string(c.pair_log2));
  kv("threads", std::to_string(c.threads));
  std::string ex;
  for (const std::string& k : known_experiments()) {
    if (c.experiments.count(k)) ex += (ex.empty() ? "" : ", ") + k;
  }
  kv("experiments", ex);
  kv("lemma.directions", std::to_string(c.directions));
  kv("lemma.seed", std::to_string(c.direction_seed));
  kv("lemma.points", std::to_string(c.lemma_points));
  kv("lemma.R", d(c.lemma_radius));
  kv("lemma.eps", join(c.eps_sweep));
  kv("lemma2.sources", std::to_string(c.lemma2_sources));
  kv("lq.q", join(c.lq_exponents));
  kv("lq.sources", std::to_string(c.lq_sources));
  std::string ps;
  for (const auto& [p, s] : c.theorem1_ps) ps += (ps.empty() ? "" : ", ") + d(p) + ":" + d(s);
  kv("theorem1.ps", ps);
  kv("theorem1.sources", std::to_string(c.theorem1_sources));
  kv("equivalence.sources", std::to_string(c.equivalence_sources));
  kv("scaling.lambda", join(c.lambdas));
  kv("scaling.s", d(c.scaling_s));
  kv("scaling.p", d(c.scaling_p));
  kv("scaling.nt", std::to_string(c.scaling_nt));
  kv("scaling.nx", std::to_string(c.scaling_nx));
  kv("scaling.radial", std::to_string(c.scaling_radial));
  kv("scaling.polar", std::to_string(c.scaling_polar));
  kv("scaling.azimuthal", std::to_string(c.scaling_azimuthal));
  kv("scaling.tolerance", d(c.scaling_tolerance));
  kv("scaling.t_center", d(c.scaling_bump.t_center));
  kv("scaling.t_width", d(c.scaling_bump.t_width));
  kv("scaling.x_center", vec(c.scaling_bump.x_center));
  kv("scaling.x_width", d(c.scaling_bump.x_width));
  kv("scaling.p_center", vec(c.scaling_bump.p_center));
  kv("scaling.p_width", d(c.scaling_bump.p_width));
  kv("split.nt", std::to_string(c.split_nt));
  kv("split.nx", std::to_string(c.split_nx));
  kv("split.radial", std::to_string(c.split_radial));
  kv("split.polar", std::to_string(c.split_polar));
  kv("split.azimuthal", std::to_string(c.split_azimuthal));
  kv("split.alpha", d(c.split_alpha));
  kv("output", c.output_dir);
  return os.str();
}

}  // namespace velavg
