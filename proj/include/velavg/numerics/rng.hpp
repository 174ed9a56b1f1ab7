#pragma once

#include <cstdint>

namespace velavg {

/// Counter-based random bits keyed by (seed, stream, counter).
///
/// Every draw is a pure function of its key, so any sample can be regenerated
/// in isolation and parallel consumers never share generator state.
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter);

/// Uniform double in [0, 1) with 53 random bits.
double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t counter);

/// Sequential view over one (seed, stream) key.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_bits() { return counter_bits(seed_, stream_, counter_++); }
  double uniform() { return counter_uniform(seed_, stream_, counter_++); }
  /// Standard normal via Box-Muller; consumes two counters per call.
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace velavg
