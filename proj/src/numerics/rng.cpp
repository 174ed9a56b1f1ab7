#include "velavg/numerics/rng.hpp"

#include <cmath>
#include <numbers>

namespace velavg {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  std::uint64_t k = mix64(seed + 0x9E3779B97F4A7C15ULL);
  k = mix64(k ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  return mix64(k ^ (counter * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t counter) {
  return static_cast<double>(counter_bits(seed, stream, counter) >> 11) *
         0x1.0p-53;
}

double CounterStream::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace velavg
