#pragma once

#include <cstdint>
#include <random>

namespace saba {

// Seeded RNG with hand-rolled draws so that identical seeds give identical
// streams across standard-library versions (std distributions are
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // inclusive bounds, unbiased via rejection
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return lo + static_cast<int>(v % span);
  }

  double uniform_double() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform_double(double lo, double hi) {
    return lo + (hi - lo) * uniform_double();
  }

  bool chance(double p) { return uniform_double() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace saba
