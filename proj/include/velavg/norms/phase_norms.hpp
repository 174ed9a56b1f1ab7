#pragma once

#include <array>
#include <span>

#include "velavg/kinetic/field.hpp"
#include "velavg/numerics/qmc.hpp"

namespace velavg {

/// Integration region time window x spatial box x momentum ball, with the
/// map from [0,1)^7 that is uniform on it (inverse CDF in spherical
/// coordinates for the ball).
struct PhaseRegion {
  Interval t;
  Box3 x;
  Ball3 p;

  double volume() const;
  void map(std::span<const double> u, double& t_out, Vec3& x_out, Vec3& p_out) const;
};

/// Tightest region known to contain the support of g.
PhaseRegion phase_region(const ScalarField7& g);

/// Randomized-QMC estimate of (int |g|^p)^(1/p). The sampler must be
/// 7-dimensional; the error bar is the delta-method image of the spread over
/// the sampler's shifts. Throws std::invalid_argument for p_exp < 1.
Estimate lp_norm_phase(const ScalarField7& g, double p_exp, const SamplerSpec& sampler,
                       const Exec& exec = {});

/// Largest |g| over the same node set (std_error is 0).
Estimate sup_norm_phase(const ScalarField7& g, const SamplerSpec& sampler, const Exec& exec = {});

}  // namespace velavg
