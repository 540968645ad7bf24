#include "swipe/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "swipe/audio_io.hpp"
#include "swipe/rng.hpp"

namespace swipe {

namespace {

constexpr double kCentsTolerance = 50.0;

std::string opt_str(const std::optional<double>& v) {
  if (!v) return "na";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

}  // namespace

double cents_diff(double f_est, double f_ref) {
  if (!(f_est > 0.0) || !(f_ref > 0.0)) {
    throw std::invalid_argument("cents_diff: frequencies must be positive");
  }
  return std::abs(1200.0 * std::log2(f_est / f_ref));
}

EvalReport evaluate(const PitchTrack& track, const Annotation& annotation) {
  if (track.hop_seconds <= 0.0 || annotation.hop_seconds <= 0.0) {
    throw std::invalid_argument("evaluate: non-positive hop");
  }
  if (std::abs(track.hop_seconds - annotation.hop_seconds) >
      0.01 * annotation.hop_seconds) {
    std::ostringstream msg;
    msg << "evaluate: hop mismatch (track " << track.hop_seconds
        << " s vs annotation " << annotation.hop_seconds << " s)";
    throw std::invalid_argument(msg.str());
  }
  const std::size_t nt = track.frames.size();
  const std::size_t na = annotation.f0.size();
  if ((nt > na ? nt - na : na - nt) > 1) {
    throw std::invalid_argument(
        "evaluate: track and annotation lengths differ by more than one "
        "frame");
  }
  const std::size_t n = std::min(nt, na);

  std::size_t n_voiced_ref = 0;
  std::size_t rpa_correct = 0;
  std::size_t oa_correct = 0;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ref = annotation.f0[i];
    const PitchFrame& est = track.frames[i];
    const bool ref_voiced = ref > 0.0;
    if (ref_voiced) ++n_voiced_ref;

    // Pitch correctness counts on reference-voiced frames no matter what
    // the predicted voicing flag says.
    const bool pitch_ok = ref_voiced && est.f0_hz > 0.0 &&
                          cents_diff(est.f0_hz, ref) <= kCentsTolerance;
    if (pitch_ok) ++rpa_correct;

    if (est.voiced && ref_voiced) ++tp;
    if (est.voiced && !ref_voiced) ++fp;
    if (!est.voiced && ref_voiced) ++fn;

    if (ref_voiced) {
      if (est.voiced && pitch_ok) ++oa_correct;
    } else {
      if (!est.voiced) ++oa_correct;
    }
  }

  EvalReport report;
  report.n_voiced_ref = n_voiced_ref;
  report.n_frames = n;
  if (n_voiced_ref > 0) {
    report.rpa = static_cast<double>(rpa_correct) / n_voiced_ref;
  }
  if (n > 0) {
    report.oa = static_cast<double>(oa_correct) / n;
  }
  const std::size_t pred_pos = tp + fp;
  const std::size_t ref_pos = tp + fn;
  if (pred_pos > 0 || ref_pos > 0) {
    const double precision =
        pred_pos > 0 ? static_cast<double>(tp) / pred_pos : 0.0;
    const double recall = ref_pos > 0 ? static_cast<double>(tp) / ref_pos : 0.0;
    report.f_score = (precision + recall) > 0.0
                         ? 2.0 * precision * recall / (precision + recall)
                         : 0.0;
  }
  return report;
}

std::vector<std::pair<double, EvalReport>> evaluate_with_noise_sweep(
    const AudioBuffer& buf, const Annotation& annotation,
    const Estimator& estimator, const std::vector<double>& snrs_db,
    std::uint64_t seed) {
  std::vector<std::pair<double, EvalReport>> out;
  out.reserve(snrs_db.size() + 1);
  out.emplace_back(std::numeric_limits<double>::infinity(),
                   evaluate(estimator(buf), annotation));
  for (std::size_t i = 0; i < snrs_db.size(); ++i) {
    const AudioBuffer noisy = add_noise(buf, snrs_db[i], mix_seed(seed, i + 1));
    out.emplace_back(snrs_db[i], evaluate(estimator(noisy), annotation));
  }
  return out;
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << opt_str(report.rpa) << ',' << opt_str(report.f_score) << ','
      << opt_str(report.oa) << ',' << report.n_voiced_ref << ','
      << report.n_frames;
  return out.str();
}

std::string report_text(const EvalReport& report) {
  auto pct = [](const std::optional<double>& v) {
    if (!v) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * *v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "raw pitch accuracy:  " << pct(report.rpa) << '\n'
      << "voicing f-score:     " << pct(report.f_score) << '\n'
      << "overall accuracy:    " << pct(report.oa) << '\n'
      << "voiced ref frames:   " << report.n_voiced_ref << '\n'
      << "total frames:        " << report.n_frames << '\n';
  return out.str();
}

}  // namespace swipe
