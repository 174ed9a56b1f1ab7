#include "velavg/bounds/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "velavg/norms/gagliardo.hpp"
#include "velavg/norms/grid_norms.hpp"
#include "velavg/norms/spectral.hpp"

namespace velavg {

namespace {

Box3 scaled(const Box3& b, double lambda) {
  return Box3{(1.0 / lambda) * b.lo, (1.0 / lambda) * b.hi};
}

}  // namespace

ScalarField7 scale_source(const ScalarField7& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale_source: lambda must be positive");
  const SupportBox& s = f.support();
  const Interval window = f.time_window();
  const Interval t{window.lo / lambda, window.hi / lambda};
  if (!(t.lo > 0.0 && t.hi < s.horizon)) {
    throw std::invalid_argument("scale_source: scaled time support leaves (0, T)");
  }
  SupportBox box{s.horizon, t, scaled(s.x, lambda), s.p_radius};
  SupportHints hints;
  hints.t = t;
  if (f.hints().x) {
    const Ball3& b = *f.hints().x;
    hints.x = Ball3{(1.0 / lambda) * b.center, b.radius / lambda};
  }
  hints.p = f.hints().p;
  return ScalarField7(
      [f, lambda](double tt, const Vec3& x, const Vec3& p) {
        return lambda * f(lambda * tt, lambda * x, p);
      },
      box, f.smoothness(), hints);
}

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: x values must not all coincide");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_std_error = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

ScalingReport scaling_experiment(const ScalarField7& f, const ScalingOptions& options) {
  if (options.lambdas.size() < 2) {
    throw std::invalid_argument("scaling_experiment: need at least two lambdas");
  }
  for (double l : options.lambdas) {
    if (!(l >= 0.5 && l <= 2.0)) {
      throw std::invalid_argument("scaling_experiment: lambda must lie in [1/2, 2]");
    }
  }
  const bool fourier = options.p_exp == 2.0;
  if (!fourier && !gagliardo_admissible(options.s, options.p_exp)) {
    throw std::invalid_argument("scaling_experiment: inadmissible (s, p)");
  }
  if (fourier && !(options.s >= 0.0 && options.s <= 1.0)) {
    throw std::invalid_argument("scaling_experiment: s must lie in [0, 1] for p = 2");
  }

  std::vector<ScalarField7> sources;
  for (double l : options.lambdas) sources.push_back(scale_source(f, l));

  ScalingReport rep;
  rep.method = fourier ? "fourier" : "gagliardo-paper";
  rep.seminorm_target = options.s - 4.0 / options.p_exp;
  rep.lp_target = -4.0 / options.p_exp;

  GridSpec& g = rep.grid;
  g.t_axis = {0.0, f.support().horizon};
  g.n = {options.nt, options.nx, options.nx, options.nx};
  Box3 box = sources.front().spatial_box();
  for (const ScalarField7& s : sources) {
    const Box3 b = s.spatial_box();
    for (int a = 0; a < 3; ++a) {
      box.lo[a] = std::min(box.lo[a], b.lo[a]);
      box.hi[a] = std::max(box.hi[a], b.hi[a]);
    }
  }
  for (int a = 0; a < 3; ++a) {
    const double h = (box.hi[a] - box.lo[a]) / (options.nx - 3);
    g.x_box.lo[a] = box.lo[a] - h;
    g.x_box.hi[a] = box.hi[a] + h;
  }

  MaterializeOptions mat = options.materialize;
  mat.duhamel.damped = false;
  mat.require_dilated_box = false;
  std::vector<double> log_l;
  std::vector<double> log_semi;
  std::vector<double> log_lp;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const AverageGrid4 avg = materialize_average(sources[i], g, mat);
    if (i == 0) rep.materialization = avg.metadata;
    ScalingPoint pt;
    pt.lambda = options.lambdas[i];
    if (fourier) {
      pt.seminorm = hs_norm_fourier(fft4(avg, options.pad), options.s);
    } else {
      SamplerSpec pairs = options.pair_sampler;
      pairs.dimension = 8;
      const SeminormEstimate e =
          gagliardo_mc(avg, options.s, options.p_exp, SeminormVariant::paper, pairs, mat.exec);
      pt.seminorm = e.value;
      pt.seminorm_std_error = e.std_error;
    }
    pt.lp_norm = lq_norm_avg(avg, options.p_exp);
    rep.points.push_back(pt);
    log_l.push_back(std::log(pt.lambda));
    log_semi.push_back(std::log(pt.seminorm));
    log_lp.push_back(std::log(pt.lp_norm));
  }
  rep.seminorm_fit = fit_line(log_l, log_semi);
  rep.lp_fit = fit_line(log_l, log_lp);
  return rep;
}

}  // namespace velavg
