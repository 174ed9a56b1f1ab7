#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "velavg/numerics/shapes.hpp"
#include "velavg/numerics/vec3.hpp"

namespace velavg {

/// Problem-level parameters: horizon T, time margin eps0 and momentum radius R.
///
/// Sources live in [eps0, T - eps0] x R^3 x B_R; 0 < eps0 < T/2, R > 0.
struct PhaseDomain {
  double T = 1.0;
  double eps0 = 0.1;
  double R = 1.0;

  void validate() const;
  Interval source_window() const { return {eps0, T - eps0}; }
};

/// Declared support of a phase-space field. Evaluation outside this set is 0.
struct SupportBox {
  double horizon = 1.0;  // T
  Interval t;            // within [0, T]
  Box3 x;
  double p_radius = 1.0;  // momentum support inside B_R

  void validate() const;
};

/// Optional tighter support statements used to clip integration ranges.
struct SupportHints {
  std::optional<Interval> t;
  std::optional<Ball3> x;
  std::optional<Ball3> p;
};

enum class Smoothness { smooth, bounded };

std::string to_string(Smoothness s);

/// A real function of (t, x, p) with declared compact support.
///
/// Evaluators are immutable and may be called concurrently. Calls outside the
/// declared SupportBox return exactly 0.
class ScalarField7 {
 public:
  using Eval = std::function<double(double, const Vec3&, const Vec3&)>;

  ScalarField7(Eval eval, SupportBox support, Smoothness smoothness = Smoothness::smooth,
               SupportHints hints = {});

  double operator()(double t, const Vec3& x, const Vec3& p) const {
    if (t < support_.t.lo || t > support_.t.hi) return 0.0;
    if (!support_.x.contains(x)) return 0.0;
    if (norm2(p) > p_radius2_) return 0.0;
    return (*eval_)(t, x, p);
  }

  const SupportBox& support() const { return support_; }
  const SupportHints& hints() const { return hints_; }
  Smoothness smoothness() const { return smoothness_; }

  /// Tightest known time interval containing the support.
  Interval time_window() const;
  /// Tightest known momentum ball containing the support.
  Ball3 momentum_ball() const;
  /// Tightest known axis-aligned box containing the spatial support.
  Box3 spatial_box() const;

 private:
  std::shared_ptr<const Eval> eval_;
  SupportBox support_;
  SupportHints hints_;
  Smoothness smoothness_;
  double p_radius2_;
};

ScalarField7 zero_field(const SupportBox& support);

/// Constant c on the whole declared support (momentum ball included).
ScalarField7 constant_field(double c, const SupportBox& support);

/// Pointwise sum of coeffs[i] * fields[i] on the union of supports.
ScalarField7 linear_combination(std::span<const ScalarField7> fields,
                                std::span<const double> coeffs);

}  // namespace velavg
