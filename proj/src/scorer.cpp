#include "swipe/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "swipe/fft.hpp"

namespace swipe {

namespace {

// Per-window-length spectrum, pre-processed for the score formula.
struct Prepared {
  std::vector<double> sqrt_mag;
  double denom = 0.0;  // sqrt(sum |X|)
};

Prepared prepare(const AudioBuffer& buf, std::int64_t center,
                 std::size_t window_len, std::size_t fft_len,
                 const FrequencyGrid& grid) {
  const SampledSpectrum spec =
      windowed_spectrum(buf, center, window_len, fft_len, grid);
  Prepared p;
  p.sqrt_mag.resize(spec.mag.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < spec.mag.size(); ++i) {
    sum += spec.mag[i];
    p.sqrt_mag[i] = std::sqrt(spec.mag[i]);
  }
  p.denom = std::sqrt(sum);
  return p;
}

double kernel_score(std::span<const double> kernel, const Prepared& p) {
  if (p.denom <= 0.0) return 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    dot += kernel[i] * p.sqrt_mag[i];
  }
  return std::clamp(dot / p.denom, -1.0, 1.0);
}

void validate(const ScorerConfig& cfg) {
  if (!fft::is_power_of_two(cfg.max_window_samples) ||
      cfg.max_window_samples < 2) {
    throw std::invalid_argument(
        "scorer: max_window_samples must be a power of two >= 2");
  }
  if (cfg.hop_seconds <= 0.0) {
    throw std::invalid_argument("scorer: hop_seconds must be > 0");
  }
}

}  // namespace

double score_single_window(const SampledSpectrum& spec, const KernelBank& bank,
                           std::size_t candidate) {
  if (spec.grid == nullptr || !spec.grid->same_as(bank.freq_grid)) {
    throw std::invalid_argument(
        "score_single_window: spectrum and kernel bank use different grids");
  }
  if (candidate >= bank.pitch_grid.size()) {
    throw std::invalid_argument("score_single_window: candidate out of range");
  }
  const std::span<const double> kernel = bank.kernel(candidate);
  double num = 0.0;
  double denom = 0.0;
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    num += kernel[k] * std::sqrt(spec.mag[k]);
    denom += spec.mag[k];
  }
  if (denom <= 0.0) return 0.0;
  return std::clamp(num / std::sqrt(denom), -1.0, 1.0);
}

ScoreFrame score_frame(const AudioBuffer& buf, std::int64_t center_sample,
                       const KernelBank& bank, const ScorerConfig& cfg) {
  validate(cfg);
  if (buf.sample_rate <= 0) {
    throw std::invalid_argument("score_frame: invalid sample rate");
  }
  const double fs = buf.sample_rate;
  const std::size_t max_window = cfg.max_window_samples;
  const std::size_t fft_len = max_window;  // shared bin spacing

  // One spectrum per distinct window length, shared across candidates.
  std::map<std::size_t, Prepared> cache;
  auto spectrum_for = [&](std::size_t window_len) -> const Prepared& {
    auto it = cache.find(window_len);
    if (it == cache.end()) {
      it = cache
               .emplace(window_len, prepare(buf, center_sample, window_len,
                                            fft_len, bank.freq_grid))
               .first;
    }
    return it->second;
  };

  ScoreFrame frame;
  frame.time_s = static_cast<double>(center_sample) / fs;
  frame.scores.resize(bank.pitch_grid.size());
  for (std::size_t c = 0; c < bank.pitch_grid.size(); ++c) {
    const double ideal_w = bank.ideal_window_s[c] * fs;  // 8 * fs / f_c
    const double log_w = std::log2(ideal_w);
    const int lo_exp = std::max(1, static_cast<int>(std::floor(log_w)));
    const int hi_exp = std::max(lo_exp, static_cast<int>(std::ceil(log_w)));
    const std::size_t lo = std::size_t{1} << lo_exp;
    const std::size_t hi = std::size_t{1} << hi_exp;
    const std::span<const double> kernel = bank.kernel(c);

    double score;
    if (cfg.interpolate_windows && hi <= max_window) {
      if (hi == lo) {
        score = kernel_score(kernel, spectrum_for(lo));
      } else {
        const double lambda = log_w - static_cast<double>(lo_exp);
        score = (1.0 - lambda) * kernel_score(kernel, spectrum_for(lo)) +
                lambda * kernel_score(kernel, spectrum_for(hi));
      }
    } else {
      // Bracket exceeds the cap (or interpolation is off): single window.
      score = kernel_score(kernel, spectrum_for(std::min(hi, max_window)));
    }
    frame.scores[c] = std::clamp(score, -1.0, 1.0);
  }
  return frame;
}

std::size_t frame_count(std::size_t n_samples, int sample_rate,
                        double hop_seconds) {
  if (n_samples == 0) return 0;
  const double hop_samples = hop_seconds * sample_rate;
  // ceil(duration/hop) with a guard against float fuzz at exact multiples.
  return 1 + static_cast<std::size_t>(
                 std::floor(static_cast<double>(n_samples - 1) / hop_samples +
                            1e-9));
}

std::vector<ScoreFrame> score_track(const AudioBuffer& buf,
                                    const KernelBank& bank,
                                    const ScorerConfig& cfg) {
  validate(cfg);
  if (buf.samples.empty() || buf.sample_rate <= 0) {
    throw std::invalid_argument("score_track: empty buffer");
  }
  const std::size_t n_frames =
      frame_count(buf.samples.size(), buf.sample_rate, cfg.hop_seconds);
  std::vector<ScoreFrame> frames;
  frames.reserve(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const auto center = static_cast<std::int64_t>(std::llround(
        static_cast<double>(i) * cfg.hop_seconds * buf.sample_rate));
    frames.push_back(score_frame(buf, center, bank, cfg));
  }
  return frames;
}

}  // namespace swipe
