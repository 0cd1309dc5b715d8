#pragma once

#include <cstdint>
#include <random>

namespace stmc {

// Seeded generator with a platform-independent uniform float mapping.
// std::uniform_real_distribution is implementation-defined, so reports and
// frozen test values go through this instead.
class Rng {
public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint32_t next_u32() { return static_cast<uint32_t>(gen_()); }

  // uniform in [lo, hi) with 24 bits of mantissa
  float uniform(float lo, float hi) {
    const float u = static_cast<float>(next_u32() >> 8) * (1.0f / 16777216.0f);
    return lo + (hi - lo) * u;
  }

  // uniform integer in [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u32() % span);
  }

private:
  std::mt19937 gen_;
};

} // namespace stmc
