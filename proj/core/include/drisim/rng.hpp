#pragma once

#include <complex>
#include <cstdint>

namespace drisim {

/// Avalanche mix of a 64-bit word (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t z);

/// Derives an independent substream key from a master seed and up to two
/// stream coordinates (e.g. drop index and link id).
std::uint64_t derive_stream_key(std::uint64_t master_seed, std::uint64_t a,
                                std::uint64_t b = 0);

/// Counter-based uniform generator (splitmix64): the state advances by a
/// fixed increment and each output is an avalanche mix of the state.
/// Substreams seeded via derive_stream_key are reproducible on any
/// platform and safe to advance concurrently on separate instances.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform on (0, 1]; never returns 0 so it is log-safe.
  double next_unit();

  /// Uniform on [0, 2*pi).
  double next_angle();

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance
  /// (polar Box-Muller; consumes exactly two uniforms).
  std::complex<double> next_circular_gaussian(double variance);

 private:
  std::uint64_t state_;
};

}  // namespace drisim
