#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsnsim {

/// Reproducible random stream for one subsystem.
///
/// Algorithm (version 1): std::mt19937_64, whose output sequence is fixed by
/// the C++ standard, seeded with SplitMix64(seed ^ SplitMix64(FNV-1a-64(label))).
/// Doubles take the top 53 bits of each draw, so results do not depend on the
/// standard library's distribution implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::string_view label);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// split_stream from the model: an independent stream keyed by (seed, label).
inline RandomStream split_stream(std::uint64_t seed, std::string_view label) {
  return RandomStream(seed, label);
}

}  // namespace wsnsim
