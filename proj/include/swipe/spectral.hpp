#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swipe/types.hpp"

namespace swipe {

enum class FrequencyScale { kMelSlaney, kErb };

// Slaney-style mel scale: linear below 1 kHz (3f/200), logarithmic above
// (27 steps per factor 6.4).
double mel_slaney(double f_hz);
double mel_slaney_inv(double mel);

// Glasberg-Moore ERB-rate scale: 21.4 * log10(1 + 0.00437 f).
double erb_scale(double f_hz);
double erb_scale_inv(double erb);

// Frequencies at which spectra and kernels are sampled: equally spaced in
// the chosen scale's units between f_lo and f_hi, mapped back to Hz.
struct FrequencyGrid {
  FrequencyScale scale = FrequencyScale::kMelSlaney;
  double f_lo = 0.0;
  double f_hi = 0.0;
  std::vector<double> freqs;

  bool same_as(const FrequencyGrid& other) const;
};

FrequencyGrid build_grid(FrequencyScale scale, double f_lo, double f_hi,
                         std::size_t n = 1024);

// Magnitude spectrum resampled onto a FrequencyGrid.
struct SampledSpectrum {
  const FrequencyGrid* grid = nullptr;  // non-owning
  std::vector<double> mag;
};

// Extracts window_len samples centered at center_sample (zero-padding past
// the signal edges), applies a periodic Hann window, zero-pads to fft_len,
// and linearly interpolates the magnitude DFT onto the grid. Grid
// frequencies above Nyquist get magnitude 0.
SampledSpectrum windowed_spectrum(const AudioBuffer& buf,
                                  std::int64_t center_sample,
                                  std::size_t window_len, std::size_t fft_len,
                                  const FrequencyGrid& grid);

}  // namespace swipe
