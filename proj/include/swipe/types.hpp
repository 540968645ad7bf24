#pragma once

#include <vector>

namespace swipe {

// Mono audio. Samples are nominally in [-1, 1]; sample_rate is in Hz.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// Reference f0 values on a uniform time grid starting at t = 0.
// An f0 of 0 encodes an unvoiced frame.
struct Annotation {
  double hop_seconds = 0.0;
  std::vector<double> f0;
};

struct PitchFrame {
  double f0_hz = 0.0;
  double confidence = 0.0;
  bool voiced = false;
};

// Estimator output: one PitchFrame per hop, first frame centered at t = 0.
struct PitchTrack {
  double hop_seconds = 0.0;
  std::vector<PitchFrame> frames;
};

}  // namespace swipe
