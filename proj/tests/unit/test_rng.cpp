#include <doctest.h>

#include <cmath>

#include "swipe/rng.hpp"

using swipe::Rng;

TEST_CASE("rng is deterministic per seed") {
  Rng a(42), b(42), c(43);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    if (va != b.next_u64()) all_equal = false;
    if (va != c.next_u64()) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniform_int covers its inclusive range") {
  Rng rng(1);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 1000; ++i) {
    const int v = rng.uniform_int(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
    if (v == -3) saw_lo = true;
    if (v == 3) saw_hi = true;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
}

TEST_CASE("uniform01 stays in [0, 1)") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform01();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("gaussian has roughly unit moments") {
  Rng rng(5);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.1);
}

TEST_CASE("mix_seed separates streams") {
  CHECK(swipe::mix_seed(1, 0, 0) != swipe::mix_seed(1, 1, 0));
  CHECK(swipe::mix_seed(1, 0, 0) != swipe::mix_seed(1, 0, 1));
  CHECK(swipe::mix_seed(1, 2, 3) != swipe::mix_seed(2, 2, 3));
  CHECK(swipe::mix_seed(1, 2, 3) == swipe::mix_seed(1, 2, 3));
}
