#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swipe/scorer.hpp"
#include "swipe/tracker.hpp"
#include "swipe/types.hpp"

namespace swipe {

// A single 1-D convolution filter applied to a score frame ("same" padding),
// followed by softmax. Equivalent to a linear layer whose weight matrix is
// Toeplitz, which preserves translation equivariance: shifting the input by
// d bins shifts the pre-softmax output by d bins.
struct ToeplitzEncoder {
  std::vector<double> taps;  // odd length; default 647
  std::size_t in_bins = 295;
  std::size_t out_bins = 295;

  std::size_t pad() const { return (taps.size() - 1) / 2; }
};

// Centered delta (identity reweighting) plus Gaussian noise of the given
// sigma on every tap.
ToeplitzEncoder make_encoder(std::size_t bins = 295, std::size_t n_taps = 647,
                             double noise_sigma = 1e-3,
                             std::uint64_t seed = 0);

// Softmax of the same-size convolution of scores with the taps.
std::vector<double> forward(const ToeplitzEncoder& enc,
                            std::span<const double> scores);

// The linear pitch readout (alpha, alpha^2, ..., alpha^|C|) . y.
double phi(std::span<const double> y, double alpha);

// Huber penalty on phi(y_shift) - alpha^k_bins * phi(y); zero iff the
// outputs transpose exactly as the input shift demands.
double loss_equivariance(std::span<const double> y,
                         std::span<const double> y_shift, int k_bins,
                         double alpha, double huber_delta = 1.0);

// Shifted cross-entropy: -sum_i y[i] * log(y_shift[i + k_bins] + eps) over
// in-range indices.
double loss_sce(std::span<const double> y, std::span<const double> y_shift,
                int k_bins);

// Cross-entropy between the clean and augmented outputs (timbre invariance).
double loss_invariance(std::span<const double> y,
                       std::span<const double> y_aug);

double entropy_nats(std::span<const double> y);

// Voiced iff the output distribution is concentrated: H(y) < threshold_nats.
bool voicing_from_entropy(std::span<const double> y, double threshold_nats);

// --- analytic gradients w.r.t. the taps ---------------------------------
// Each *_grad function runs the needed forward passes internally, adds the
// gradient of the loss into d_taps (which must have taps.size() entries),
// and returns the loss value.

double loss_equivariance_grad(const ToeplitzEncoder& enc,
                              std::span<const double> scores,
                              std::span<const double> scores_shift, int k_bins,
                              double alpha, double huber_delta,
                              std::span<double> d_taps);

double loss_sce_grad(const ToeplitzEncoder& enc, std::span<const double> scores,
                     std::span<const double> scores_shift, int k_bins,
                     std::span<double> d_taps);

double loss_invariance_grad(const ToeplitzEncoder& enc,
                            std::span<const double> scores,
                            std::span<const double> scores_aug,
                            std::span<double> d_taps);

// Supervised cross-entropy -sum_i target[i] * log(y[i] + eps).
double loss_supervised_grad(const ToeplitzEncoder& enc,
                            std::span<const double> scores,
                            std::span<const double> target,
                            std::span<double> d_taps);

// Gaussian-blurred classification target centered at the grid position of
// f0_hz with standard deviation sigma_bins, renormalized to sum to 1.
// sigma_bins -> 0 degenerates to a one-hot at the nearest bin.
std::vector<double> gaussian_target(double f0_hz, const PitchGrid& grid,
                                    double sigma_bins);

// --- time-domain augmentation --------------------------------------------

struct AugmentConfig {
  // SNR of added white noise, drawn uniformly from [lo, hi] dB. Infinite
  // bounds disable the noise.
  double snr_db_lo = 20.0;
  double snr_db_hi = 60.0;
  // Linear-phase FIR with a randomized amplitude response: control points
  // drawn uniformly in +-fir_db_range dB and linearly interpolated across
  // the band.
  int fir_control_points = 8;
  double fir_db_range = 6.0;
  int fir_length = 63;  // odd
  // Overall gain in dB, drawn uniformly from [lo, hi].
  double gain_db_lo = -6.0;
  double gain_db_hi = 6.0;
};

// Zero-delay linear-phase FIR whose amplitude response linearly interpolates
// control_points_db (equally spaced from DC to Nyquist), designed by
// frequency sampling and Hann-windowed to fir_length taps.
std::vector<double> design_fir(std::span<const double> control_points_db,
                               int fir_length);

// Convolution with the filter center aligned to each sample (no group
// delay), zero-padded at the edges.
std::vector<double> apply_fir(std::span<const double> x,
                              std::span<const double> fir);

// Noise + random-response FIR + random gain; deterministic per seed.
AudioBuffer augment(const AudioBuffer& frame, const AugmentConfig& cfg,
                    std::uint64_t seed);

// --- training -------------------------------------------------------------

struct TrainConfig {
  double alpha = 1.0194406437021448;  // 2^(1/36): one bin step per phi step
  double w_equiv = 1.0;
  double w_sce = 1.0;
  double w_inv = 1.0;
  double huber_delta = 1.0;
  double lr = 1e-4;  // Adam, beta1 = 0.9, beta2 = 0.999
  std::size_t batch_size = 256;
  std::size_t steps = 1000;
  int shift_range_semitones = 5;  // k drawn uniformly from [-k_max, k_max]
  AugmentConfig augment;
  double sigma_bins = 1.0;  // supervised target blur
  std::size_t n_taps = 647;
  double init_noise_sigma = 1e-3;
  std::uint64_t seed = 0;
};

struct TrainResult {
  ToeplitzEncoder encoder;
  std::vector<double> loss_history;  // per-step batch-mean total loss
};

// PESTO-style self-supervised training on unlabeled clips: per sample, a
// pitch shift of k semitones (by resampling) and a timbre augmentation are
// applied in the time domain, scores are recomputed for all three signals,
// and the taps follow the analytic gradient of
//   w_equiv * L_equiv + w_sce * L_sce + w_inv * L_inv
// under Adam. Throws if the loss goes non-finite.
TrainResult train_self_supervised(const std::vector<AudioBuffer>& corpus,
                                  const KernelBank& bank,
                                  const ScorerConfig& scorer_cfg,
                                  const TrainConfig& cfg);

struct LabeledClip {
  AudioBuffer audio;
  Annotation annotation;
};

// Supervised training on annotated voiced frames with Gaussian-blurred
// cross-entropy targets.
TrainResult train_supervised(const std::vector<LabeledClip>& corpus,
                             const KernelBank& bank,
                             const ScorerConfig& scorer_cfg,
                             const TrainConfig& cfg);

// --- persistence ----------------------------------------------------------

// Versioned little-endian binary: magic "SWTE", format version, in_bins,
// out_bins, tap count (u32 each), then the taps as 64-bit floats.
void save_weights(const ToeplitzEncoder& enc, const std::string& path);
ToeplitzEncoder load_weights(const std::string& path);

// --- inference ------------------------------------------------------------

// Tracks a buffer with the encoder applied to every score frame: the pitch
// is the refined argmax of the output distribution. Voicing uses the raw
// SWIPE confidence against score_threshold unless entropy_threshold_nats is
// set, in which case frames with H(y) below it are voiced.
PitchTrack track_with_encoder(
    const AudioBuffer& buf, const KernelBank& bank,
    const ScorerConfig& scorer_cfg, const ToeplitzEncoder& enc,
    bool refine = true, double score_threshold = 0.0,
    std::optional<double> entropy_threshold_nats = std::nullopt);

}  // namespace swipe
