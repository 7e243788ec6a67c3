#include "drisim/rng.hpp"

#include <cmath>
#include <numbers>

namespace drisim {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_key(std::uint64_t master_seed, std::uint64_t a,
                                std::uint64_t b) {
  std::uint64_t k = mix64(master_seed + kGamma);
  k = mix64(k + kGamma + a);
  k = mix64(k + kGamma + b);
  return k;
}

std::uint64_t SplitMix64::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double SplitMix64::next_angle() {
  return 2.0 * std::numbers::pi *
         (static_cast<double>(next_u64() >> 11) * 0x1.0p-53);
}

std::complex<double> SplitMix64::next_circular_gaussian(double variance) {
  const double radius = std::sqrt(-variance * std::log(next_unit()));
  return std::polar(radius, next_angle());
}

}  // namespace drisim
