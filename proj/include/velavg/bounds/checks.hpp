#pragma once

#include <span>
#include <vector>

#include "velavg/bounds/report.hpp"
#include "velavg/kinetic/average.hpp"
#include "velavg/numerics/sobol.hpp"

namespace velavg {

/// Shared budgets of the end-to-end checks. Sampler dimensions are set by
/// each check (7 for phase-space norms, 8 for pair integrals); the remaining
/// SamplerSpec fields are taken as given.
struct CheckResources {
  int nt = 24;
  int nx = 24;
  int pad = 2;
  MaterializeOptions materialize;
  SamplerSpec phase_sampler{SamplerKind::sobol, 7, 1, 8, 14};
  SamplerSpec pair_sampler{SamplerKind::sobol, 8, 1, 8, 19};
};

/// A source with its undamped solution and sampled momentum average, built
/// once and shared by the checks that need them.
struct PreparedSource {
  ScalarField7 f;
  ScalarField7 u;
  AverageGrid4 average;
};

PreparedSource prepare_source(const ScalarField7& f, const CheckResources& res);

/// ||u~||_{L^q} <= C_q ||h||_{L^q} for the damped average of source h, with
/// C_q = C3, C2 or C4. One report per entry of q (one damped
/// materialization shared by all of them).
std::vector<BoundReport> check_lq_bounds(const ScalarField7& h, std::span<const double> q,
                                         const CheckResources& res);
BoundReport check_lq_bound(const ScalarField7& h, double q, const CheckResources& res);

/// ||u~||^2_{H^1/2} <= 2 C_R ||u||_2 ||f||_2 with the Fourier H^(1/2) norm of
/// the padded grid. The solution must vanish on the grid boundary, i.e. at
/// t = T (fft4 rejects the grid otherwise).
BoundReport check_lemma2(const PreparedSource& src, const CheckResources& res);
BoundReport check_lemma2(const ScalarField7& f, const CheckResources& res);

/// SeminormVariant::paper seminorm of u~ against C6 ||u||_p^(1-s) ||f||_p^s. The
/// parameters also carry the unoptimized C6 (||u||_p + ||f||_p) bound and its
/// margin. Throws std::invalid_argument unless s lies in admissible_s(p).
BoundReport check_theorem1(const PreparedSource& src, double s, double p_exp,
                           const CheckResources& res);
BoundReport check_theorem1(const ScalarField7& f, double s, double p_exp,
                           const CheckResources& res);

}  // namespace velavg
