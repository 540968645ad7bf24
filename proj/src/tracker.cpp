#include "swipe/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swipe {

PitchEstimate pick_pitch(const ScoreFrame& frame, const PitchGrid& grid,
                         bool refine) {
  const std::vector<double>& s = frame.scores;
  if (s.size() < 3) {
    throw std::invalid_argument("pick_pitch: need at least 3 candidates");
  }
  if (s.size() != grid.size()) {
    throw std::invalid_argument("pick_pitch: frame/grid size mismatch");
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[best]) best = i;  // ties keep the lowest index
  }

  double offset_bins = 0.0;
  if (refine && best > 0 && best + 1 < s.size()) {
    const double a = s[best - 1];
    const double b = s[best];
    const double c = s[best + 1];
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) {
      // Parabola vertex through three equally spaced (log2 f, score) points.
      offset_bins = std::clamp((a - c) / (2.0 * denom), -0.5, 0.5);
    }
  }

  PitchEstimate est;
  est.confidence = s[best];
  est.f0_hz = grid.candidates[best] *
              std::pow(2.0, offset_bins / grid.bins_per_octave());
  return est;
}

bool voicing_from_score(double confidence, double threshold) {
  return confidence > threshold;
}

PitchTrack track(const AudioBuffer& buf, const KernelBank& bank,
                 const ScorerConfig& cfg, bool refine,
                 double voicing_threshold) {
  const std::vector<ScoreFrame> frames = score_track(buf, bank, cfg);
  PitchTrack out;
  out.hop_seconds = cfg.hop_seconds;
  out.frames.reserve(frames.size());
  for (const ScoreFrame& f : frames) {
    const PitchEstimate est = pick_pitch(f, bank.pitch_grid, refine);
    PitchFrame pf;
    pf.f0_hz = est.f0_hz;
    pf.confidence = est.confidence;
    pf.voiced = voicing_from_score(est.confidence, voicing_threshold);
    out.frames.push_back(pf);
  }
  return out;
}

}  // namespace swipe
