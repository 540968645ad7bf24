#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "swipe/spectral.hpp"

namespace swipe {

// Geometrically spaced pitch candidates: candidates[i] = f_min * 2^(i/(12*b)).
struct PitchGrid {
  double f_min = 27.5;
  double f_max = 8055.0;
  int bins_per_semitone = 3;
  std::vector<double> candidates;

  std::size_t size() const { return candidates.size(); }
  int bins_per_octave() const { return 12 * bins_per_semitone; }
  // Fractional bin position of f_hz relative to candidates[0].
  double bin_of(double f_hz) const;
  std::size_t nearest_bin(double f_hz) const;
};

PitchGrid build_pitch_grid(double f_min = 27.5, double f_max = 8055.0,
                           int bins_per_semitone = 3);

// The sampling-frequency grid conventionally paired with a pitch grid:
// n points spanning 0.25*f_min .. 1.25*f_max.
FrequencyGrid frequency_grid_for(const PitchGrid& grid, FrequencyScale scale,
                                 std::size_t n = 1024);

enum class KernelVariant { kSwipe, kSwipePrime };

// Spectral kernel for one pitch candidate, sampled on freq_grid and
// L2-normalized. Cosine main lobes of width f_c/2 sit at the active
// harmonics of f_c with a 1/sqrt(i) decay; half-amplitude cosine valleys
// fill the surrounding quarter-to-three-quarter band, giving negative dips
// at f_c/2, 3f_c/2, ... Active harmonics are 1..n for kSwipe and
// {1} + primes for kSwipePrime (the variant that suppresses octave errors).
std::vector<double> kernel_for(double f_c, const FrequencyGrid& freq_grid,
                               KernelVariant variant);

struct KernelBank {
  PitchGrid pitch_grid;
  FrequencyGrid freq_grid;
  KernelVariant variant = KernelVariant::kSwipePrime;
  std::vector<double> ideal_window_s;  // 8 / f_c per candidate

  std::span<const double> kernel(std::size_t candidate) const {
    return {kernels_.data() + candidate * freq_grid.freqs.size(),
            freq_grid.freqs.size()};
  }

  // Flat |C| x grid-size storage; filled by build_kernel_bank.
  std::vector<double> kernels_;
};

KernelBank build_kernel_bank(PitchGrid grid, FrequencyGrid freq_grid,
                             KernelVariant variant);

}  // namespace swipe
