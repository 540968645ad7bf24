#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "swipe/audio_io.hpp"
#include "swipe/kernels.hpp"
#include "swipe/types.hpp"

namespace testutil {

inline std::filesystem::path make_temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("swipepitch_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

// Direct DFT magnitude at one frequency; the independent oracle used to
// check synthesis and FFT-based code.
inline double dft_mag_at(std::span<const double> x, double freq_hz,
                         double sample_rate) {
  double re = 0.0;
  double im = 0.0;
  const double w = 2.0 * M_PI * freq_hz / sample_rate;
  for (std::size_t n = 0; n < x.size(); ++n) {
    re += x[n] * std::cos(w * static_cast<double>(n));
    im -= x[n] * std::sin(w * static_cast<double>(n));
  }
  return std::hypot(re, im);
}

inline swipe::AudioBuffer sawtooth_clip(double f0, double dur_s, int fs,
                                        double hop = 0.01,
                                        double amplitude = 0.8) {
  const auto n = static_cast<std::size_t>(std::llround(dur_s / hop));
  return swipe::synth_signal(swipe::Waveform::kSawtooth,
                             std::vector<double>(n, f0), hop, fs, amplitude)
      .audio;
}

inline swipe::AudioBuffer sine_clip(double f0, double dur_s, int fs,
                                    double hop = 0.01,
                                    double amplitude = 0.8) {
  const auto n = static_cast<std::size_t>(std::llround(dur_s / hop));
  return swipe::synth_signal(swipe::Waveform::kSine,
                             std::vector<double>(n, f0), hop, fs, amplitude)
      .audio;
}

inline swipe::KernelBank make_bank(
    swipe::KernelVariant variant = swipe::KernelVariant::kSwipePrime,
    double f_min = 27.5, double f_max = 8055.0, int bins_per_semitone = 3) {
  swipe::PitchGrid grid =
      swipe::build_pitch_grid(f_min, f_max, bins_per_semitone);
  swipe::FrequencyGrid freq =
      swipe::frequency_grid_for(grid, swipe::FrequencyScale::kMelSlaney);
  return swipe::build_kernel_bank(std::move(grid), std::move(freq), variant);
}

inline double rms(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace testutil
