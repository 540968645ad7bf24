#pragma once

#include <cstdint>
#include <vector>

#include "swipe/kernels.hpp"
#include "swipe/types.hpp"

namespace swipe {

struct ScorerConfig {
  // Largest analysis window; also the shared FFT length, so every window
  // size is analyzed at the same bin spacing. Must be a power of two >= 2.
  std::size_t max_window_samples = 16384;
  // When true, each candidate's score is computed at the two power-of-two
  // windows bracketing its ideal length W = 8*fs/f_c and combined linearly
  // in log2(W). Candidates whose bracket exceeds max_window_samples fall
  // back to the capped window alone.
  bool interpolate_windows = true;
  double hop_seconds = 0.01;
};

// All candidate scores for one analysis instant. Scores lie in [-1, 1].
struct ScoreFrame {
  double time_s = 0.0;
  std::vector<double> scores;
};

// The similarity score for one candidate against one sampled spectrum:
//   sum_k S_c[k] * |X[k]|^(1/2) / (sum_k |X[k]|)^(1/2)
// which is 0 for an identically zero spectrum. Bounded by [-1, 1] since
// kernels are unit-norm (Cauchy-Schwarz).
double score_single_window(const SampledSpectrum& spec, const KernelBank& bank,
                           std::size_t candidate);

// Scores every candidate at one frame center, sharing one spectrum per
// distinct window length across candidates.
ScoreFrame score_frame(const AudioBuffer& buf, std::int64_t center_sample,
                       const KernelBank& bank, const ScorerConfig& cfg);

// Frames centered at t = 0, hop, 2*hop, ...; frame count is
// ceil(duration/hop).
std::vector<ScoreFrame> score_track(const AudioBuffer& buf,
                                    const KernelBank& bank,
                                    const ScorerConfig& cfg);

// Number of frames score_track produces for n_samples of audio.
std::size_t frame_count(std::size_t n_samples, int sample_rate,
                        double hop_seconds);

}  // namespace swipe
