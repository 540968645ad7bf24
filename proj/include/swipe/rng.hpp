#pragma once

#include <cstdint>

namespace swipe {

// Small deterministic generator (splitmix64 core). The standard library's
// distributions are implementation-defined, so everything seeded in this
// project goes through this class to keep results reproducible across
// platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform01();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);

  // Standard normal via Box-Muller.
  double gaussian();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives an independent stream from (seed, a, b), e.g. (seed, step, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace swipe
