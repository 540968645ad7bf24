#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swipe/types.hpp"

namespace swipe {

// Metrics are nullopt when their denominator is empty (e.g. RPA with no
// reference-voiced frames), never NaN.
struct EvalReport {
  std::optional<double> rpa;
  std::optional<double> f_score;
  std::optional<double> oa;
  std::size_t n_voiced_ref = 0;
  std::size_t n_frames = 0;
};

// |1200 * log2(f_est / f_ref)|. Both frequencies must be positive.
double cents_diff(double f_est, double f_ref);

// Raw Pitch Accuracy, voicing F-score and Overall Accuracy at the 50-cent
// threshold. RPA conditions on reference voicing only: the estimate counts
// whether or not the frame was predicted voiced. Hops must match within 1%
// and lengths within one frame (the excess is truncated).
EvalReport evaluate(const PitchTrack& track, const Annotation& annotation);

using Estimator = std::function<PitchTrack(const AudioBuffer&)>;

// Evaluates on the clean input (reported with SNR = +inf) and then at each
// requested SNR with a fixed per-SNR noise seed.
std::vector<std::pair<double, EvalReport>> evaluate_with_noise_sweep(
    const AudioBuffer& buf, const Annotation& annotation,
    const Estimator& estimator, const std::vector<double>& snrs_db,
    std::uint64_t seed = 0);

// Single-line CSV: rpa,f_score,oa,n_voiced_ref,n_frames ("na" for missing).
std::string report_csv(const EvalReport& report);

// Multi-line human-readable block.
std::string report_text(const EvalReport& report);

}  // namespace swipe
