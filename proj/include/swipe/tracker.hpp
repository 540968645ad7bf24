#pragma once

#include "swipe/scorer.hpp"
#include "swipe/types.hpp"

namespace swipe {

struct PitchEstimate {
  double f0_hz = 0.0;
  double confidence = 0.0;
};

// Argmax over candidates (ties break to the lowest index). With refine, a
// parabola is fitted through the three scores around an interior peak in
// log-frequency and the vertex offset, clamped to [-0.5, 0.5] bins, shifts
// the returned frequency.
PitchEstimate pick_pitch(const ScoreFrame& frame, const PitchGrid& grid,
                         bool refine);

// Voiced iff confidence is strictly above the threshold, so all-zero
// (silent) frames come out unvoiced at the default threshold of 0.
bool voicing_from_score(double confidence, double threshold = 0.0);

PitchTrack track(const AudioBuffer& buf, const KernelBank& bank,
                 const ScorerConfig& cfg, bool refine = true,
                 double voicing_threshold = 0.0);

}  // namespace swipe
