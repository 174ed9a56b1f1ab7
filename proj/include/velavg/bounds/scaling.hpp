#pragma once

#include <string>
#include <vector>

#include "velavg/kinetic/average.hpp"
#include "velavg/numerics/sobol.hpp"

namespace velavg {

/// f_l(t, x, p) = l f(l t, l x, p). Its zero-datum solution is
/// u_l(t, x, p) = u(l t, l x, p). Throws std::invalid_argument unless l > 0
/// and the scaled time support stays inside (0, T).
ScalarField7 scale_source(const ScalarField7& f, double lambda);

/// Least-squares line y = intercept + slope x with the usual standard error
/// of the slope (0 for two points).
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
};

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingOptions {
  std::vector<double> lambdas{0.6, 0.8, 1.0, 1.25, 1.6};
  double s = 0.5;
  double p_exp = 2.0;
  int nt = 32;
  int nx = 32;
  int pad = 2;
  MaterializeOptions materialize;
  SamplerSpec pair_sampler{SamplerKind::sobol, 8, 1, 8, 19};
};

struct ScalingPoint {
  double lambda = 1.0;
  double seminorm = 0.0;
  double seminorm_std_error = 0.0;
  double lp_norm = 0.0;
};

/// Seminorm slope is fitted against s - 4/p and the L^p slope against -4/p.
struct ScalingReport {
  std::vector<ScalingPoint> points;
  SlopeFit seminorm_fit;
  SlopeFit lp_fit;
  double seminorm_target = 0.0;
  double lp_target = 0.0;
  std::string method;  // "fourier" for p = 2, else "gagliardo-paper"
  GridSpec grid;
  std::string materialization;
};

/// All lambdas share one grid: [0, T] in time and the union of the scaled
/// spatial supports plus one cell per side in x. The solutions must stay in
/// the spatial support of their sources (transport bumps do); fft4 rejects
/// the grid otherwise. Throws for lambda outside [1/2, 2], fewer than two
/// lambdas, or inadmissible (s, p) other than (1/2, 2).
ScalingReport scaling_experiment(const ScalarField7& f, const ScalingOptions& options);

}  // namespace velavg
