#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "velavg/kinetic/bump.hpp"

namespace velavg {

/// Malformed or invalid configuration. `line` is 0 for whole-file problems.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string origin, int line, std::string field, const std::string& message);
  const std::string& origin() const { return origin_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string origin_;
  int line_;
  std::string field_;
};

inline const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names{"lemma3",   "lemma4",        "lemma2",
                                              "lq-bounds", "theorem1",     "scaling",
                                              "fourier-split", "norm-equivalence"};
  return names;
}

/// Every knob of a suite run. Defaults reproduce the acceptance suite; the
/// key names accepted by parse_config are given next to each field.
struct RunConfig {
  PhaseDomain domain;                                  // T, eps0, R
  FamilySpec family{FieldKind::transport_bump, 7, 5};  // family.kind/seed/count/amplitude
  int nt = 24;                                         // grid.nt
  int nx = 24;                                         // grid.nx
  int pad = 2;                                         // grid.pad
  int n_radial = 6;                                    // momentum.radial
  int n_polar = 6;                                     // momentum.polar
  int n_azimuthal = 12;                                // momentum.azimuthal
  int duhamel_order = 10;                              // duhamel.order
  int duhamel_panels = 24;                             // duhamel.panels
  std::uint64_t sampler_seed = 11;                     // sampler.seed
  unsigned sampler_shifts = 8;                         // sampler.shifts
  unsigned phase_log2 = 14;                            // sampler.phase_log2
  unsigned pair_log2 = 19;                             // sampler.pair_log2
  unsigned threads = 0;                                // threads

  std::set<std::string> experiments{known_experiments().begin(),
                                    known_experiments().end()};  // experiments

  int directions = 200;                                             // lemma.directions
  std::uint64_t direction_seed = 2024;                              // lemma.seed
  std::uint64_t lemma_points = 100000;                              // lemma.points
  double lemma_radius = 1.0;                                        // lemma.R
  std::vector<double> eps_sweep{0.01, 0.05, 0.1, 0.25, 0.5, 1.0};  // lemma.eps

  int lemma2_sources = 5;                                   // lemma2.sources
  std::vector<double> lq_exponents{1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()};  // lq.q
  int lq_sources = 3;                                       // lq.sources
  std::vector<std::pair<double, double>> theorem1_ps{
      {2.0, 0.45}, {3.0, 0.2}, {4.0, 0.2}};  // theorem1.ps = p:s, ...
  int theorem1_sources = 3;                  // theorem1.sources
  int equivalence_sources = 5;               // equivalence.sources

  std::vector<double> lambdas{0.6, 0.8, 1.0, 1.25, 1.6};  // scaling.lambda
  double scaling_s = 0.5;                                 // scaling.s
  double scaling_p = 2.0;                                 // scaling.p
  int scaling_nt = 24;                                    // scaling.nt
  int scaling_nx = 24;                                    // scaling.nx
  int scaling_radial = 4;                                 // scaling.radial
  int scaling_polar = 4;                                  // scaling.polar
  int scaling_azimuthal = 8;                              // scaling.azimuthal
  double scaling_tolerance = 0.05;                        // scaling.tolerance
  BumpSpec scaling_bump = default_scaling_bump();         // scaling.t_center, ...

  int split_nt = 12;        // split.nt
  int split_nx = 12;        // split.nx
  int split_radial = 2;     // split.radial
  int split_polar = 4;      // split.polar
  int split_azimuthal = 4;  // split.azimuthal
  double split_alpha = 0.0;  // split.alpha (0: optimal)

  std::string output_dir = "velavg-out";  // output

  static BumpSpec default_scaling_bump();
  /// Throws ConfigError (line 0) naming the first violated invariant.
  void validate(const std::string& origin = "<config>") const;
};

/// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
/// Unknown keys, malformed values and violated invariants raise ConfigError
/// with the line number and key.
RunConfig parse_config(const std::string& text, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

/// Applies `key=value` assignments on top of `base` (later ones win) and
/// revalidates. Errors name the assignment by its 1-based position.
RunConfig with_overrides(const RunConfig& base, const std::vector<std::string>& assignments);

/// Canonical key = value rendering; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& c);

}  // namespace velavg
