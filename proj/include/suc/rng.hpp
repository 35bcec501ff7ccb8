#pragma once

#include <cstdint>

namespace suc {

// splitmix64; bit-stable across platforms, which keeps scenario generation
// and manifests reproducible independently of the standard library.
struct Rng {
  std::uint64_t state = 0x9E3779B97F4A7C15ull;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1].
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, one draw per call.
  double next_normal();

 private:
  bool has_spare_ = false;
  double spare_ = 0;
};

// Deterministic substream derivation: hashes the parts into a child seed so
// independent streams (per scenario, per source, per issue time) never
// overlap by construction.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                       std::uint64_t c = 0, std::uint64_t d = 0);

}  // namespace suc
