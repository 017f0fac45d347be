#pragma once

#include <cstdint>
#include <random>

namespace cbpp {

/// Deterministic random source shared by the solver and the benchmark
/// generator. The engine is std::mt19937_64, whose output sequence is fixed by
/// the C++ standard; the distributions below are hand-rolled so the derived
/// values do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, bound]. 1 - u maps the [0, 1) grid onto (0, 1] exactly.
  double random_real(double bound) { return (1.0 - uniform01()) * bound; }

  /// Uniform integer in [0, n), n >= 1, by rejection of the biased tail.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cbpp
