#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "velavg/numerics/parallel.hpp"
#include "velavg/numerics/sobol.hpp"

namespace velavg {

/// Sample mean of per-randomization estimates and its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

inline Estimate combine_shifts(std::span<const double> per_shift, std::uint64_t n_samples) {
  Estimate e;
  e.n_samples = n_samples;
  if (per_shift.empty()) return e;
  double m = 0.0;
  for (double v : per_shift) m += v;
  m /= static_cast<double>(per_shift.size());
  double ss = 0.0;
  for (double v : per_shift) ss += (v - m) * (v - m);
  e.value = m;
  if (per_shift.size() > 1) {
    const double k = static_cast<double>(per_shift.size());
    e.std_error = std::sqrt(ss / (k - 1.0) / k);
  }
  return e;
}

/// Per-randomization sums of fn(point), K components each.
///
/// Points are processed in fixed chunks whose partial sums are folded in
/// index order, so the result does not depend on the worker count.
template <std::size_t K, class Fn>
std::vector<std::array<double, K>> shift_sums(const PointStream& stream, const Exec& exec,
                                              Fn&& fn, std::uint64_t chunk = 4096) {
  const SamplerSpec& spec = stream.spec();
  const std::uint64_t per = spec.points_per_shift();
  const std::uint64_t chunks = (per + chunk - 1) / chunk;
  using Acc = std::array<double, K>;
  auto partial = parallel_map<Acc>(
      static_cast<std::size_t>(chunks * spec.n_shifts), exec, [&](std::size_t job) {
        const unsigned shift = static_cast<unsigned>(job / chunks);
        const std::uint64_t begin = (job % chunks) * chunk;
        const std::uint64_t end = std::min(per, begin + chunk);
        std::vector<double> pt(spec.dimension);
        Acc acc{};
        for (std::uint64_t i = begin; i < end; ++i) {
          stream.point(shift, i, pt);
          const Acc v = fn(std::span<const double>(pt));
          for (std::size_t c = 0; c < K; ++c) acc[c] += v[c];
        }
        return acc;
      });
  std::vector<Acc> out(spec.n_shifts, Acc{});
  for (std::size_t job = 0; job < partial.size(); ++job) {
    Acc& dst = out[job / chunks];
    for (std::size_t c = 0; c < K; ++c) dst[c] += partial[job][c];
  }
  return out;
}

}  // namespace velavg
