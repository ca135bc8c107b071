#pragma once

// Seeded randomness. Every sample item draws from its own mt19937_64 stream,
// seeded by splitmix64-mixing (seed, item index), so output does not depend
// on how items are split across threads.

#include <cstdint>
#include <random>

namespace garside {

inline constexpr const char* kRngName = "mt19937_64/splitmix64-stream";

std::uint64_t splitmix64(std::uint64_t& state);
/// Seed for stream `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0. Rejection on the top of the 64-bit
  /// range, so the result is exact and portable (unlike std distributions).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace garside
