#include "velavg/geometry/slice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "velavg/numerics/ball_points.hpp"
#include "velavg/numerics/quadrature.hpp"

namespace velavg {

double SliceSet::g(const Vec3& p) const {
  return dot(p, direction.e) / std::sqrt(1.0 + norm2(p)) + direction.e_prime;
}

bool SliceSet::contains(const Vec3& p) const {
  return norm2(p) <= radius * radius && std::fabs(g(p)) <= epsilon;
}

namespace {

constexpr std::uint64_t kChunk = 4096;

double ball_volume(double R) { return 4.0 * std::numbers::pi * R * R * R / 3.0; }

void require_budget(std::uint64_t n) {
  if (n < 10000) throw std::invalid_argument("slice Monte Carlo needs n >= 10^4");
}

// After rotating e onto the first axis, g = k / y + c with k = |e| p1,
// c = e' and y = sqrt(1 + p1^2 + w), w = p2^2 + p3^2 in [0, R^2 - p1^2].
struct Line {
  double k;
  double c;
  double y0;
  double y1;
};

Line line_at(double a, double c, double p1, double R) {
  return Line{a * p1, c, std::sqrt(1.0 + p1 * p1), std::sqrt(1.0 + R * R)};
}

// y-interval (possibly empty) on which |k/y + c| <= eps.
struct YRange {
  double lo;
  double hi;
  bool empty() const { return !(hi > lo); }
};

YRange slab(const Line& L, double eps) {
  const YRange none{L.y1, L.y0};
  if (L.k == 0.0) return std::fabs(L.c) <= eps ? YRange{L.y0, L.y1} : none;
  double k = L.k;
  double lo_c = -eps - L.c;
  double hi_c = eps - L.c;
  if (k < 0.0) {
    k = -k;
    const double t = lo_c;
    lo_c = -hi_c;
    hi_c = -t;
  }
  // Now k / y is positive and decreasing in y.
  if (hi_c <= 0.0) return none;
  const double yl = k / hi_c;
  const double yh = lo_c > 0.0 ? k / lo_c : std::numeric_limits<double>::infinity();
  YRange r{std::max(L.y0, yl), std::min(L.y1, yh)};
  return r.empty() ? none : r;
}

// Length in w = y^2 - y0^2 of a y-interval.
double w_length(const YRange& r) { return r.empty() ? 0.0 : r.hi * r.hi - r.lo * r.lo; }

// Values of p1 at which a slab edge |g| = t meets y = y0 or y = y1; the
// outer integrands have kinks there and at p1 = 0, where k changes sign.
std::vector<double> kinks(double a, double c, double R, std::span<const double> levels) {
  std::vector<double> out{-R, 0.0, R};
  const double y1 = std::sqrt(1.0 + R * R);
  if (a == 0.0) return out;
  for (double t : levels) {
    for (double sgn : {-1.0, 1.0}) {
      const double s = sgn * t - c;
      out.push_back(s * y1 / a);
      if (std::fabs(s) < a) out.push_back(s / std::sqrt(a * a - s * s));
    }
  }
  std::erase_if(out, [R](double v) { return !(v >= -R && v <= R); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double outer(const std::function<double(double)>& f, std::span<const double> breaks,
             double abs_tol) {
  const double share = abs_tol / static_cast<double>(breaks.size());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) sum += integrate_adaptive(f, breaks[i], breaks[i + 1], share);
  }
  return sum;
}

// int over y in [lo, hi] of 2 y / (k / y + c)^2 = 2 y^3 / (k + c y)^2, i.e. |g|^-2 dw.
// With z = k + c y the antiderivative is 2/c^4 (z^2/2 - 3kz + 3k^2 ln|z| + k^3/z).
// That form cancels badly when |c y| << |k|; there the integrand is far from its
// pole and plain adaptive quadrature is cheap.
double inner_weight(const Line& L, double lo, double hi, double tol) {
  if (!(hi > lo)) return 0.0;
  const double k = L.k;
  const double c = L.c;
  if (k == 0.0) return (hi * hi - lo * lo) / (c * c);
  if (std::fabs(c) * hi > 0.05 * std::fabs(k)) {
    const double zl = k + c * lo;
    const double zh = k + c * hi;
    const double dz = c * (hi - lo);
    const double poly = 0.5 * dz * (zh + zl) - 3.0 * k * dz;
    const double log_term = 3.0 * k * k * std::log1p(dz / zl);
    const double inv_term = -k * k * k * dz / (zh * zl);
    const double c2 = c * c;
    return 2.0 * (poly + log_term + inv_term) / (c2 * c2);
  }
  return integrate_adaptive(
      [&](double y) {
        const double gv = L.k / y + L.c;
        return 2.0 * y / (gv * gv);
      },
      lo, hi, tol);
}

}  // namespace

double slice_measure_reduced(const SliceSet& set, double abs_tol) {
  const double a = norm(set.direction.e);
  const double c = set.direction.e_prime;
  const double R = set.radius;
  const double eps = set.epsilon;
  const double level[1] = {eps};
  return std::numbers::pi *
         outer([&](double p1) { return w_length(slab(line_at(a, c, p1, R), eps)); },
               kinks(a, c, R, level), abs_tol / std::numbers::pi);
}

double lemma4_integral_reduced(const Direction4& dir, double eps, double R, double abs_tol) {
  if (!(eps > 0.0)) throw std::invalid_argument("lemma4_integral_reduced: eps must be positive");
  const double a = norm(dir.e);
  const double c = dir.e_prime;
  const double inner_tol = 1e-3 * abs_tol;
  auto f = [&](double p1) {
    const Line L = line_at(a, c, p1, R);
    const YRange s = slab(L, eps);
    if (s.empty()) return inner_weight(L, L.y0, L.y1, inner_tol);
    return inner_weight(L, L.y0, s.lo, inner_tol) + inner_weight(L, s.hi, L.y1, inner_tol);
  };
  const double level[1] = {eps};
  return std::numbers::pi * outer(f, kinks(a, c, R, level), abs_tol / std::numbers::pi);
}

double lemma4_layer_cake(const Direction4& dir, double eps, double R, double abs_tol) {
  const double a = norm(dir.e);
  const double gmax = a * R / std::sqrt(1.0 + R * R) + std::fabs(dir.e_prime);
  if (gmax <= eps) return 0.0;
  const double base = slice_measure_reduced(SliceSet{dir, eps, R}, 1e-3 * abs_tol);
  // For t >= gmax the inner measure is the whole complement of the slab.
  const double tail = (ball_volume(R) - base) / (gmax * gmax);
  const double body = integrate_adaptive(
      [&](double t) {
        const double m = slice_measure_reduced(SliceSet{dir, t, R}, 1e-3 * abs_tol);
        return 2.0 * (m - base) / (t * t * t);
      },
      eps, gmax, abs_tol);
  return body + tail;
}

std::vector<SliceMeasure> measure_slice_sweep(const Direction4& dir, std::span<const double> eps,
                                              double R, std::uint64_t n, std::uint64_t seed,
                                              const Exec& exec) {
  require_budget(n);
  const std::size_t ne = eps.size();
  const SliceSet probe{dir, 0.0, R};
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  auto counts = parallel_reduce(
      static_cast<std::size_t>(chunks), exec, std::vector<std::uint64_t>(ne, 0),
      [&](std::size_t c) {
        std::vector<std::uint64_t> hits(ne, 0);
        const std::uint64_t end = std::min(n, (c + 1) * kChunk);
        for (std::uint64_t i = c * kChunk; i < end; ++i) {
          const double gv = std::fabs(probe.g(ball_point(R, seed, i)));
          for (std::size_t j = 0; j < ne; ++j) hits[j] += gv <= eps[j];
        }
        return hits;
      },
      [](std::vector<std::uint64_t> acc, const std::vector<std::uint64_t>& v) {
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v[j];
        return acc;
      });
  const double vol = ball_volume(R);
  std::vector<SliceMeasure> out(ne);
  for (std::size_t j = 0; j < ne; ++j) {
    const double frac = static_cast<double>(counts[j]) / static_cast<double>(n);
    out[j].measure = vol * frac;
    out[j].std_error = vol * std::sqrt(frac * (1.0 - frac) / static_cast<double>(n));
    out[j].n_samples = n;
    out[j].hits = counts[j];
  }
  return out;
}

SliceMeasure measure_slice_mc(const SliceSet& set, std::uint64_t n, std::uint64_t seed,
                              const Exec& exec) {
  const double eps[1] = {set.epsilon};
  return measure_slice_sweep(set.direction, eps, set.radius, n, seed, exec)[0];
}

std::vector<Estimate> lemma4_mc_sweep(const Direction4& dir, std::span<const double> eps,
                                      double R, std::uint64_t n, std::uint64_t seed,
                                      const Exec& exec) {
  require_budget(n);
  const std::size_t ne = eps.size();
  const SliceSet probe{dir, 0.0, R};
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  // Per eps: sum of |g|^-2 and of its square over the excluded-slab points.
  auto sums = parallel_reduce(
      static_cast<std::size_t>(chunks), exec, std::vector<double>(2 * ne, 0.0),
      [&](std::size_t c) {
        std::vector<double> s(2 * ne, 0.0);
        const std::uint64_t end = std::min(n, (c + 1) * kChunk);
        for (std::uint64_t i = c * kChunk; i < end; ++i) {
          const double gv = probe.g(ball_point(R, seed, i));
          const double w = 1.0 / (gv * gv);
          for (std::size_t j = 0; j < ne; ++j) {
            if (std::fabs(gv) > eps[j]) {
              s[2 * j] += w;
              s[2 * j + 1] += w * w;
            }
          }
        }
        return s;
      },
      [](std::vector<double> acc, const std::vector<double>& v) {
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v[j];
        return acc;
      });
  const double vol = ball_volume(R);
  const double dn = static_cast<double>(n);
  std::vector<Estimate> out(ne);
  for (std::size_t j = 0; j < ne; ++j) {
    const double mean = sums[2 * j] / dn;
    const double var = std::max(0.0, sums[2 * j + 1] / dn - mean * mean);
    out[j].value = vol * mean;
    out[j].std_error = vol * std::sqrt(var / (dn - 1.0));
    out[j].n_samples = n;
  }
  return out;
}

Estimate lemma4_integral_mc(const Direction4& dir, double eps, double R, std::uint64_t n,
                            std::uint64_t seed, const Exec& exec) {
  if (!(eps > 0.0)) throw std::invalid_argument("lemma4_integral_mc: eps must be positive");
  const double e[1] = {eps};
  return lemma4_mc_sweep(dir, e, R, n, seed, exec)[0];
}

}  // namespace velavg
