#include "swipe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swipe/fft.hpp"

namespace swipe {

namespace {

constexpr double kMelBreakHz = 1000.0;
constexpr double kMelBreak = 15.0;              // 3 * 1000 / 200
const double kMelLogStep = std::log(6.4) / 27.0;

double scale_fwd(FrequencyScale scale, double f) {
  return scale == FrequencyScale::kMelSlaney ? mel_slaney(f) : erb_scale(f);
}

double scale_inv(FrequencyScale scale, double v) {
  return scale == FrequencyScale::kMelSlaney ? mel_slaney_inv(v)
                                             : erb_scale_inv(v);
}

// Periodic Hann windows, cached per length and thread.
const std::vector<double>& hann_window(std::size_t len) {
  thread_local std::vector<std::vector<double>*> cache;
  thread_local std::vector<std::size_t> lens;
  for (std::size_t i = 0; i < lens.size(); ++i) {
    if (lens[i] == len) return *cache[i];
  }
  auto* w = new std::vector<double>(len);
  for (std::size_t n = 0; n < len; ++n) {
    (*w)[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(n) /
                                   static_cast<double>(len));
  }
  lens.push_back(len);
  cache.push_back(w);
  return *w;
}

}  // namespace

double mel_slaney(double f_hz) {
  if (f_hz < 0.0) throw std::invalid_argument("mel_slaney: negative frequency");
  if (f_hz < kMelBreakHz) return 3.0 * f_hz / 200.0;
  return kMelBreak + std::log(f_hz / kMelBreakHz) / kMelLogStep;
}

double mel_slaney_inv(double mel) {
  if (mel < kMelBreak) return 200.0 * mel / 3.0;
  return kMelBreakHz * std::exp((mel - kMelBreak) * kMelLogStep);
}

double erb_scale(double f_hz) {
  if (f_hz < 0.0) throw std::invalid_argument("erb_scale: negative frequency");
  return 21.4 * std::log10(1.0 + 0.00437 * f_hz);
}

double erb_scale_inv(double erb) {
  return (std::pow(10.0, erb / 21.4) - 1.0) / 0.00437;
}

bool FrequencyGrid::same_as(const FrequencyGrid& other) const {
  if (this == &other) return true;
  return scale == other.scale && f_lo == other.f_lo && f_hi == other.f_hi &&
         freqs.size() == other.freqs.size();
}

FrequencyGrid build_grid(FrequencyScale scale, double f_lo, double f_hi,
                         std::size_t n) {
  if (!(0.0 < f_lo && f_lo < f_hi)) {
    throw std::invalid_argument("build_grid: need 0 < f_lo < f_hi");
  }
  if (n < 2) throw std::invalid_argument("build_grid: need at least 2 points");
  FrequencyGrid grid;
  grid.scale = scale;
  grid.f_lo = f_lo;
  grid.f_hi = f_hi;
  grid.freqs.resize(n);
  const double lo = scale_fwd(scale, f_lo);
  const double hi = scale_fwd(scale, f_hi);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    grid.freqs[i] = scale_inv(scale, v);
  }
  // Endpoints map back exactly.
  grid.freqs.front() = f_lo;
  grid.freqs.back() = f_hi;
  return grid;
}

SampledSpectrum windowed_spectrum(const AudioBuffer& buf,
                                  std::int64_t center_sample,
                                  std::size_t window_len, std::size_t fft_len,
                                  const FrequencyGrid& grid) {
  if (!fft::is_power_of_two(fft_len)) {
    throw std::invalid_argument("windowed_spectrum: fft_len must be a power of two");
  }
  if (window_len > fft_len) {
    throw std::invalid_argument("windowed_spectrum: window_len > fft_len");
  }
  if (buf.sample_rate <= 0) {
    throw std::invalid_argument("windowed_spectrum: invalid sample rate");
  }

  const auto n_samples = static_cast<std::int64_t>(buf.samples.size());
  const std::int64_t start =
      center_sample - static_cast<std::int64_t>(window_len) / 2;
  const std::vector<double>& hann = hann_window(window_len);

  std::vector<double> windowed(window_len, 0.0);
  for (std::size_t i = 0; i < window_len; ++i) {
    const std::int64_t idx = start + static_cast<std::int64_t>(i);
    if (idx >= 0 && idx < n_samples) {
      windowed[i] = buf.samples[static_cast<std::size_t>(idx)] * hann[i];
    }
  }

  const auto bins = fft::rfft(windowed, fft_len);

  SampledSpectrum out;
  out.grid = &grid;
  out.mag.resize(grid.freqs.size());
  const double nyquist = 0.5 * buf.sample_rate;
  const double bins_per_hz = static_cast<double>(fft_len) / buf.sample_rate;
  const std::size_t last_bin = bins.size() - 1;
  for (std::size_t i = 0; i < grid.freqs.size(); ++i) {
    const double f = grid.freqs[i];
    if (f > nyquist) {
      out.mag[i] = 0.0;
      continue;
    }
    const double pos = f * bins_per_hz;
    const auto k0 = static_cast<std::size_t>(pos);
    if (k0 >= last_bin) {
      out.mag[i] = std::abs(bins[last_bin]);
      continue;
    }
    const double frac = pos - static_cast<double>(k0);
    const double m0 = std::abs(bins[k0]);
    const double m1 = std::abs(bins[k0 + 1]);
    out.mag[i] = m0 + (m1 - m0) * frac;
  }
  return out;
}

}  // namespace swipe
