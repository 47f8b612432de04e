#pragma once

#include <cstdint>
#include <vector>

#include "nslit/model.hpp"

namespace nslit {

/// xorshift64* (Vigna 2016): state ^= state >> 12, << 25, >> 27, output
/// state * 0x2545F4914F6CDD1D. The state must be non-zero.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// Seed of the random-weight scenario.
inline constexpr std::uint64_t kRandomWeightSeed = 20100601;

/// The shipped scenarios, in figure order.
std::vector<ScenarioConfig> gallery_scenarios();

}  // namespace nslit
