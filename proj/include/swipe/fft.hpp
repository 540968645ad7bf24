#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace swipe::fft {

constexpr bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

// Forward real-to-complex transform of x zero-padded (or truncated) to n.
// n must be a power of two. Returns the n/2 + 1 non-negative-frequency bins.
std::vector<std::complex<double>> rfft(std::span<const double> x, std::size_t n);

// Inverse of rfft: takes n/2 + 1 bins, returns n real samples (normalized
// so that irfft(rfft(x, n), n) == x).
std::vector<double> irfft(std::span<const std::complex<double>> bins,
                          std::size_t n);

}  // namespace swipe::fft
