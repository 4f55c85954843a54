#pragma once

#include <cmath>
#include <cstdint>

namespace tenuniq {

/// splitmix64 step; the standard 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic per-task seed derived from a master seed and a task index,
/// so parallel and serial schedules see identical streams.
inline std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (index + 1));
  return splitmix64(s);
}
inline std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return seed_mix(seed_mix(seed, a), b);
}

/// Self-contained N(0,1) sampler (xorshift-free: splitmix64 + Box-Muller).
/// Not tied to any standard-library distribution so streams are stable.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : state_(seed) {}

  double uniform01() {  // [0, 1)
    return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t raw() { return splitmix64(state_); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return splitmix64(state_) % n; }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tenuniq
