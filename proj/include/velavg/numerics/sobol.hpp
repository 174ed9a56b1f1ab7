#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace velavg {

inline constexpr unsigned kMaxSobolDimension = 16;

/// Gray-code Sobol sequence with Joe-Kuo direction numbers, random access.
///
/// Index 0 is the origin corner (0,...,0); callers that want to avoid it
/// use a digital shift.
class SobolSequence {
 public:
  explicit SobolSequence(unsigned dimension);

  unsigned dimension() const { return dimension_; }

  /// Integer coordinates of point `index` (32-bit fixed point).
  void bits(std::uint64_t index, std::span<std::uint32_t> out) const;

  /// Coordinates of point `index` in [0,1)^d, XOR-shifted by `shift` if given.
  void point(std::uint64_t index, std::span<double> out,
             std::span<const std::uint32_t> shift = {}) const;

 private:
  unsigned dimension_;
  std::vector<std::array<std::uint32_t, 32>> directions_;
};

enum class SamplerKind { sobol, uniform_prng };

/// Describes one reproducible point stream in [0,1)^d.
///
/// A stream consists of `n_shifts` independent randomizations, each with
/// 2^log2_points points; the spread across randomizations gives error bars.
struct SamplerSpec {
  SamplerKind kind = SamplerKind::sobol;
  unsigned dimension = 1;
  std::uint64_t seed = 1;
  unsigned n_shifts = 8;
  unsigned log2_points = 16;

  std::uint64_t points_per_shift() const { return std::uint64_t{1} << log2_points; }
};

/// Materializes the points described by a SamplerSpec on demand.
///
/// point(shift, index) is a pure function, so identical specs always produce
/// identical streams regardless of evaluation order or thread count.
class PointStream {
 public:
  explicit PointStream(const SamplerSpec& spec);

  const SamplerSpec& spec() const { return spec_; }
  void point(unsigned shift, std::uint64_t index, std::span<double> out) const;

 private:
  SamplerSpec spec_;
  SobolSequence sobol_;
  std::vector<std::vector<std::uint32_t>> shifts_;
};

/// Validating factory: rejects dimension 0 or above 16 and n_shifts < 8.
PointStream sobol_stream(const SamplerSpec& spec);

}  // namespace velavg
