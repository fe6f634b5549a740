// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace satris {

// Deterministic random stream. Uniform/normal variates are generated from the
// raw 64-bit engine output directly (not via std::*_distribution, whose
// results differ between standard library implementations), so a given
// stream seed produces identical sequences on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t stream_seed) : engine_(stream_seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [0, span).
  double uniform(double span) { return uniform() * span; }

  // Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Collapses (seed, salt, index) into one stream seed. Distinct salts give
  // unrelated substreams for the same (seed, index) pair.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt,
                              std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s = h ^ (salt * 0x9E3779B97F4A7C15ull);
    h = splitmix64(s);
    s = h ^ (index * 0xD1B54A32D192ED03ull);
    return splitmix64(s);
  }

  static std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace satris
