#include "velavg/numerics/sobol.hpp"

#include <stdexcept>
#include <string>

#include "velavg/numerics/rng.hpp"

namespace velavg {

namespace {

struct Primitive {
  unsigned degree;
  std::uint32_t coeffs;
  std::array<std::uint32_t, 6> m;
};

// new-joe-kuo-6.21201, dimensions 2..16.
constexpr std::array<Primitive, kMaxSobolDimension - 1> kPrimitives{{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
}};

}  // namespace

SobolSequence::SobolSequence(unsigned dimension)
    : dimension_(dimension), directions_(dimension) {
  if (dimension == 0 || dimension > kMaxSobolDimension) {
    throw std::invalid_argument("sobol: dimension must be in [1, 16], got " +
                                std::to_string(dimension));
  }
  for (unsigned k = 0; k < 32; ++k) directions_[0][k] = 1u << (31 - k);

  for (unsigned d = 1; d < dimension; ++d) {
    const Primitive& prim = kPrimitives[d - 1];
    const unsigned s = prim.degree;
    std::array<std::uint32_t, 32>& v = directions_[d];
    for (unsigned k = 0; k < s && k < 32; ++k) v[k] = prim.m[k] << (31 - k);
    for (unsigned k = s; k < 32; ++k) {
      std::uint32_t value = v[k - s] ^ (v[k - s] >> s);
      for (unsigned j = 1; j < s; ++j) {
        if ((prim.coeffs >> (s - 1 - j)) & 1u) value ^= v[k - j];
      }
      v[k] = value;
    }
  }
}

void SobolSequence::bits(std::uint64_t index, std::span<std::uint32_t> out) const {
  const std::uint64_t gray = index ^ (index >> 1);
  for (unsigned d = 0; d < dimension_; ++d) {
    std::uint32_t acc = 0;
    std::uint64_t g = gray;
    for (unsigned k = 0; g != 0 && k < 32; ++k, g >>= 1) {
      if (g & 1u) acc ^= directions_[d][k];
    }
    out[d] = acc;
  }
}

void SobolSequence::point(std::uint64_t index, std::span<double> out,
                          std::span<const std::uint32_t> shift) const {
  std::array<std::uint32_t, kMaxSobolDimension> raw{};
  bits(index, std::span(raw.data(), dimension_));
  for (unsigned d = 0; d < dimension_; ++d) {
    std::uint32_t b = raw[d];
    if (!shift.empty()) b ^= shift[d];
    // Centre of the 2^-32 cell keeps shifted points strictly inside (0,1).
    out[d] = (static_cast<double>(b) + (shift.empty() ? 0.0 : 0.5)) * 0x1.0p-32;
  }
}

PointStream::PointStream(const SamplerSpec& spec)
    : spec_(spec), sobol_(spec.dimension), shifts_(spec.n_shifts) {
  for (unsigned k = 0; k < spec.n_shifts; ++k) {
    shifts_[k].resize(spec.dimension);
    for (unsigned d = 0; d < spec.dimension; ++d) {
      shifts_[k][d] = static_cast<std::uint32_t>(
          counter_bits(spec.seed, 0x51F7ULL + k, d) >> 32);
    }
  }
}

void PointStream::point(unsigned shift, std::uint64_t index,
                        std::span<double> out) const {
  if (spec_.kind == SamplerKind::sobol) {
    sobol_.point(index, out, shifts_[shift]);
    return;
  }
  const std::uint64_t base = index * spec_.dimension;
  for (unsigned d = 0; d < spec_.dimension; ++d) {
    out[d] = counter_uniform(spec_.seed, 0xA11CEULL + shift, base + d);
  }
}

PointStream sobol_stream(const SamplerSpec& spec) {
  if (spec.dimension == 0 || spec.dimension > kMaxSobolDimension) {
    throw std::invalid_argument("sampler: dimension must be in [1, 16], got " +
                                std::to_string(spec.dimension));
  }
  if (spec.n_shifts < 8) {
    throw std::invalid_argument("sampler: at least 8 randomizations required");
  }
  if (spec.log2_points > 40) {
    throw std::invalid_argument("sampler: log2_points above 40");
  }
  return PointStream(spec);
}

}  // namespace velavg
