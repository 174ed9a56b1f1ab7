#pragma once

#include "velavg/kinetic/field.hpp"
#include "velavg/numerics/qmc.hpp"

namespace velavg {

/// Physical-side halves of the Plancherel identity
///   ||(tau + p.z/p0) u^||_2 = ||d_t u + (p/p0).grad_x u||_2 = ||f||_2.
struct SymbolCheck {
  double lhs = 0.0;  // ||f||_2
  double rhs = 0.0;  // ||d_t u + v.grad u||_2 with centered differences
  double lhs_std_error = 0.0;
  double rhs_std_error = 0.0;
  /// Randomization spread of lhs - rhs; both use the same nodes, so this is
  /// much smaller than either error bar.
  double diff_std_error = 0.0;
  std::uint64_t n_samples = 0;
};

/// Both norms over f's support region with one 7-dimensional sampler.
SymbolCheck symbol_weighted_l2(const ScalarField7& f, const ScalarField7& u,
                               const SamplerSpec& sampler, double h_fd = 1e-3,
                               const Exec& exec = {});

}  // namespace velavg
