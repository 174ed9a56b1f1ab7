#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "velavg/geometry/direction.hpp"
#include "velavg/numerics/parallel.hpp"
#include "velavg/numerics/qmc.hpp"

namespace velavg {

/// E_R = { p in B_R : |g(p)| <= eps },  g(p) = p.e / sqrt(1 + |p|^2) + e'.
struct SliceSet {
  Direction4 direction;
  double epsilon = 0.1;
  double radius = 1.0;

  double g(const Vec3& p) const;
  bool contains(const Vec3& p) const;
};

struct SliceMeasure {
  double measure = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t hits = 0;
};

/// Uniform points in B_R (ball_points stream `seed`), indicator of the slab,
/// scaled by the ball volume. Throws for n < 10^4.
SliceMeasure measure_slice_mc(const SliceSet& set, std::uint64_t n, std::uint64_t seed,
                              const Exec& exec = {});

/// Same estimate for several eps on one shared point set.
std::vector<SliceMeasure> measure_slice_sweep(const Direction4& dir, std::span<const double> eps,
                                              double R, std::uint64_t n, std::uint64_t seed,
                                              const Exec& exec = {});

/// mes(E_R) by the cylindrical reduction: rotate e onto the first axis, so g
/// depends on p1 and w = p2^2 + p3^2 only; the slab in w is an interval found
/// in closed form for each p1 and the p1 integral is adaptive.
double slice_measure_reduced(const SliceSet& set, double abs_tol = 1e-10);

/// int over { p in B_R : |g| > eps } of |g|^-2, by the same reduction with an
/// adaptive inner integral on the complement of the slab interval.
double lemma4_integral_reduced(const Direction4& dir, double eps, double R,
                               double abs_tol = 1e-8);

/// Plain Monte Carlo of the same integral. Throws for n < 10^4.
Estimate lemma4_integral_mc(const Direction4& dir, double eps, double R, std::uint64_t n,
                            std::uint64_t seed, const Exec& exec = {});

/// Same estimate for several eps on one shared point set.
std::vector<Estimate> lemma4_mc_sweep(const Direction4& dir, std::span<const double> eps,
                                      double R, std::uint64_t n, std::uint64_t seed,
                                      const Exec& exec = {});

/// Layer-cake form 2 int_eps^inf t^-3 mes({eps < |g| <= t}) dt with the inner
/// measures from slice_measure_reduced.
double lemma4_layer_cake(const Direction4& dir, double eps, double R, double abs_tol = 1e-8);

}  // namespace velavg
