#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "velavg/kinetic/field.hpp"

namespace velavg {

/// exp(-1/(1-r^2)) for |r| < 1, else 0.
double bump_profile(double r);

/// Center, radii and amplitude of a (t, x, p) tensor-product bump.
///
/// The bump is amplitude * phi(|t-tc|/wt) * phi(|x-xc|/wx) * phi(|p-pc|/wp)
/// with phi = bump_profile, so its value at the center is amplitude * e^-3.
struct BumpSpec {
  double t_center = 0.5;
  Vec3 x_center;
  Vec3 p_center;
  double t_width = 0.25;
  double x_width = 0.5;
  double p_width = 0.5;
  double amplitude = 1.0;

  /// Bounding box of the spatial support ball.
  Box3 x_box() const;
};

/// Validates `spec` against the domain: time support inside [eps0, T-eps0],
/// spatial ball inside x_box, momentum ball inside B_R, positive widths.
void validate_bump(const BumpSpec& spec, const PhaseDomain& domain, const Box3& x_box);

ScalarField7 bump_field(const BumpSpec& spec, const PhaseDomain& domain, const Box3& x_box);
inline ScalarField7 bump_field(const BumpSpec& spec, const PhaseDomain& domain) {
  return bump_field(spec, domain, spec.x_box());
}

/// A transport pair: `u` is a bump and `f = du/dt + (p/p0) . grad_x u`, so that
/// u is the zero-initial-datum solution driven by f and its support stays in
/// [eps0, T - eps0].
struct TransportPair {
  ScalarField7 u;
  ScalarField7 f;
};

TransportPair transport_source(const BumpSpec& spec, const PhaseDomain& domain,
                               const Box3& x_box);
inline TransportPair transport_source(const BumpSpec& spec, const PhaseDomain& domain) {
  return transport_source(spec, domain, spec.x_box());
}

enum class FieldKind { zero, bump, transport_bump };

std::string to_string(FieldKind kind);
FieldKind parse_field_kind(const std::string& name);

/// Seeded bump family: member i draws its parameters from the counter stream
/// (seed, i). Plain bumps act as sources directly; transport bumps come with
/// the exact solution.
struct FamilySpec {
  FieldKind kind = FieldKind::transport_bump;
  std::uint64_t seed = 1;
  int count = 5;
  double amplitude = 1.0;
};

struct SourceCase {
  std::string label;
  BumpSpec bump;
  ScalarField7 source;
  std::optional<ScalarField7> exact_solution;
};

BumpSpec random_bump_spec(const PhaseDomain& domain, std::uint64_t seed,
                          std::uint64_t index, double amplitude = 1.0);

std::vector<SourceCase> make_family(const FamilySpec& family, const PhaseDomain& domain);

}  // namespace velavg
