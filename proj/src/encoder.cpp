#include "swipe/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swipe/audio_io.hpp"
#include "swipe/fft.hpp"
#include "swipe/rng.hpp"

namespace swipe {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogEps = 1e-9;

void check_encoder(const ToeplitzEncoder& enc) {
  if (enc.taps.empty() || enc.taps.size() % 2 == 0) {
    throw std::invalid_argument("encoder: tap count must be odd and > 0");
  }
  if (enc.in_bins == 0 || enc.in_bins != enc.out_bins) {
    throw std::invalid_argument("encoder: in_bins must equal out_bins");
  }
}

// One forward pass with everything the backward pass needs.
struct Pass {
  std::vector<double> x_padded;  // input with pad() zeros on each side
  std::vector<double> y;         // softmax output
};

Pass run_forward(const ToeplitzEncoder& enc, std::span<const double> scores) {
  check_encoder(enc);
  if (scores.size() != enc.in_bins) {
    throw std::invalid_argument("encoder: input size mismatch");
  }
  const std::size_t n = enc.in_bins;
  const std::size_t n_taps = enc.taps.size();
  const std::size_t pad = enc.pad();

  Pass pass;
  pass.x_padded.assign(n + 2 * pad, 0.0);
  std::copy(scores.begin(), scores.end(), pass.x_padded.begin() + pad);

  std::vector<double> z(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double* x = pass.x_padded.data() + j;
    double acc = 0.0;
    for (std::size_t m = 0; m < n_taps; ++m) acc += enc.taps[m] * x[m];
    z[j] = acc;
  }

  // Stable softmax.
  const double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  pass.y.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    pass.y[j] = std::exp(z[j] - zmax);
    sum += pass.y[j];
  }
  for (double& v : pass.y) v /= sum;
  return pass;
}

// Adds d(loss)/d(taps) for one pass given d(loss)/dy.
void backward_into(const ToeplitzEncoder& enc, const Pass& pass,
                   std::span<const double> grad_y, std::span<double> d_taps) {
  const std::size_t n = enc.in_bins;
  const std::size_t n_taps = enc.taps.size();
  double dot = 0.0;
  for (std::size_t j = 0; j < n; ++j) dot += grad_y[j] * pass.y[j];
  for (std::size_t j = 0; j < n; ++j) {
    const double gz = pass.y[j] * (grad_y[j] - dot);
    if (gz == 0.0) continue;
    const double* x = pass.x_padded.data() + j;
    for (std::size_t m = 0; m < n_taps; ++m) d_taps[m] += gz * x[m];
  }
}

double huber(double x, double delta) {
  const double a = std::abs(x);
  return a <= delta ? 0.5 * x * x : delta * (a - 0.5 * delta);
}

double huber_deriv(double x, double delta) {
  return std::clamp(x, -delta, delta);
}

// phi and its per-component weights alpha^(i+1).
std::vector<double> phi_weights(std::size_t n, double alpha) {
  std::vector<double> w(n);
  double p = alpha;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = p;
    p *= alpha;
  }
  return w;
}

double loss_sce_core(std::span<const double> y, std::span<const double> y_shift,
                     int k_bins, std::span<double> g_y,
                     std::span<double> g_y_shift) {
  const auto n = static_cast<std::int64_t>(y.size());
  double loss = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t j = i + k_bins;
    if (j < 0 || j >= n) continue;
    const double p = y_shift[static_cast<std::size_t>(j)] + kLogEps;
    loss -= y[static_cast<std::size_t>(i)] * std::log(p);
    if (!g_y.empty()) {
      g_y[static_cast<std::size_t>(i)] -= std::log(p);
      g_y_shift[static_cast<std::size_t>(j)] -=
          y[static_cast<std::size_t>(i)] / p;
    }
  }
  return loss;
}

void check_grad_size(const ToeplitzEncoder& enc, std::span<double> d_taps) {
  if (d_taps.size() != enc.taps.size()) {
    throw std::invalid_argument("encoder: gradient size mismatch");
  }
}

struct AdamState {
  std::vector<double> m, v;
  std::size_t t = 0;

  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}

  void step(std::vector<double>& w, const std::vector<double>& g, double lr) {
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    ++t;
    const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
    const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
      w[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
  }
};

void axpy(std::vector<double>& acc, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a * x[i];
}

}  // namespace

ToeplitzEncoder make_encoder(std::size_t bins, std::size_t n_taps,
                             double noise_sigma, std::uint64_t seed) {
  if (n_taps == 0 || n_taps % 2 == 0) {
    throw std::invalid_argument("make_encoder: tap count must be odd");
  }
  ToeplitzEncoder enc;
  enc.in_bins = bins;
  enc.out_bins = bins;
  enc.taps.assign(n_taps, 0.0);
  Rng rng(seed);
  if (noise_sigma > 0.0) {
    for (double& t : enc.taps) t = noise_sigma * rng.gaussian();
  }
  enc.taps[enc.pad()] += 1.0;  // identity reweighting to start from
  return enc;
}

std::vector<double> forward(const ToeplitzEncoder& enc,
                            std::span<const double> scores) {
  return run_forward(enc, scores).y;
}

double phi(std::span<const double> y, double alpha) {
  double acc = 0.0;
  double p = alpha;
  for (const double v : y) {
    acc += p * v;
    p *= alpha;
  }
  return acc;
}

double loss_equivariance(std::span<const double> y,
                         std::span<const double> y_shift, int k_bins,
                         double alpha, double huber_delta) {
  const double target = std::pow(alpha, static_cast<double>(k_bins)) *
                        phi(y, alpha);
  return huber(phi(y_shift, alpha) - target, huber_delta);
}

double loss_sce(std::span<const double> y, std::span<const double> y_shift,
                int k_bins) {
  return loss_sce_core(y, y_shift, k_bins, {}, {});
}

double loss_invariance(std::span<const double> y,
                       std::span<const double> y_aug) {
  return loss_sce_core(y, y_aug, 0, {}, {});
}

double entropy_nats(std::span<const double> y) {
  double h = 0.0;
  for (const double v : y) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

bool voicing_from_entropy(std::span<const double> y, double threshold_nats) {
  return entropy_nats(y) < threshold_nats;
}

double loss_equivariance_grad(const ToeplitzEncoder& enc,
                              std::span<const double> scores,
                              std::span<const double> scores_shift, int k_bins,
                              double alpha, double huber_delta,
                              std::span<double> d_taps) {
  check_grad_size(enc, d_taps);
  const Pass a = run_forward(enc, scores);
  const Pass b = run_forward(enc, scores_shift);
  const std::vector<double> w = phi_weights(enc.out_bins, alpha);
  const double ak = std::pow(alpha, static_cast<double>(k_bins));

  double phi_a = 0.0, phi_b = 0.0;
  for (std::size_t i = 0; i < enc.out_bins; ++i) {
    phi_a += w[i] * a.y[i];
    phi_b += w[i] * b.y[i];
  }
  const double rho = phi_b - ak * phi_a;
  const double d_rho = huber_deriv(rho, huber_delta);

  std::vector<double> g_a(enc.out_bins), g_b(enc.out_bins);
  for (std::size_t i = 0; i < enc.out_bins; ++i) {
    g_b[i] = d_rho * w[i];
    g_a[i] = -d_rho * ak * w[i];
  }
  backward_into(enc, a, g_a, d_taps);
  backward_into(enc, b, g_b, d_taps);
  return huber(rho, huber_delta);
}

double loss_sce_grad(const ToeplitzEncoder& enc, std::span<const double> scores,
                     std::span<const double> scores_shift, int k_bins,
                     std::span<double> d_taps) {
  check_grad_size(enc, d_taps);
  const Pass a = run_forward(enc, scores);
  const Pass b = run_forward(enc, scores_shift);
  std::vector<double> g_a(enc.out_bins, 0.0), g_b(enc.out_bins, 0.0);
  const double loss = loss_sce_core(a.y, b.y, k_bins, g_a, g_b);
  backward_into(enc, a, g_a, d_taps);
  backward_into(enc, b, g_b, d_taps);
  return loss;
}

double loss_invariance_grad(const ToeplitzEncoder& enc,
                            std::span<const double> scores,
                            std::span<const double> scores_aug,
                            std::span<double> d_taps) {
  return loss_sce_grad(enc, scores, scores_aug, 0, d_taps);
}

double loss_supervised_grad(const ToeplitzEncoder& enc,
                            std::span<const double> scores,
                            std::span<const double> target,
                            std::span<double> d_taps) {
  check_grad_size(enc, d_taps);
  if (target.size() != enc.out_bins) {
    throw std::invalid_argument("encoder: target size mismatch");
  }
  const Pass a = run_forward(enc, scores);
  double loss = 0.0;
  std::vector<double> g(enc.out_bins);
  for (std::size_t i = 0; i < enc.out_bins; ++i) {
    const double p = a.y[i] + kLogEps;
    loss -= target[i] * std::log(p);
    g[i] = -target[i] / p;
  }
  backward_into(enc, a, g, d_taps);
  return loss;
}

std::vector<double> gaussian_target(double f0_hz, const PitchGrid& grid,
                                    double sigma_bins) {
  if (!(f0_hz > 0.0)) {
    throw std::invalid_argument("gaussian_target: f0 must be positive");
  }
  std::vector<double> t(grid.size(), 0.0);
  if (sigma_bins < 1e-9) {
    t[grid.nearest_bin(f0_hz)] = 1.0;
    return t;
  }
  const double center = grid.bin_of(f0_hz);
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = (static_cast<double>(i) - center) / sigma_bins;
    t[i] = std::exp(-0.5 * d * d);
    sum += t[i];
  }
  for (double& v : t) v /= sum;
  return t;
}

std::vector<double> design_fir(std::span<const double> control_points_db,
                               int fir_length) {
  if (fir_length < 1 || fir_length % 2 == 0) {
    throw std::invalid_argument("design_fir: length must be odd and >= 1");
  }
  if (control_points_db.size() < 2) {
    throw std::invalid_argument("design_fir: need at least 2 control points");
  }
  std::size_t n = 256;
  while (n < static_cast<std::size_t>(4 * fir_length)) n *= 2;
  const std::size_t half = n / 2 + 1;

  // Desired zero-phase amplitude response: control points equally spaced
  // from DC to Nyquist, linearly interpolated in dB.
  std::vector<std::complex<double>> bins(half);
  const double step =
      static_cast<double>(control_points_db.size() - 1) /
      static_cast<double>(half - 1);
  for (std::size_t k = 0; k < half; ++k) {
    const double pos = static_cast<double>(k) * step;
    const auto i0 = std::min(control_points_db.size() - 2,
                             static_cast<std::size_t>(pos));
    const double frac = pos - static_cast<double>(i0);
    const double db = control_points_db[i0] +
                      (control_points_db[i0 + 1] - control_points_db[i0]) *
                          frac;
    bins[k] = std::pow(10.0, db / 20.0);
  }

  const std::vector<double> h0 = fft::irfft(bins, n);
  const int mid = (fir_length - 1) / 2;
  std::vector<double> h(static_cast<std::size_t>(fir_length));
  for (int m = 0; m < fir_length; ++m) {
    const auto src = static_cast<std::size_t>(
        ((m - mid) % static_cast<int>(n) + static_cast<int>(n)) %
        static_cast<int>(n));
    double w = 1.0;
    if (fir_length > 1) {
      w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(m) /
                               static_cast<double>(fir_length - 1));
    }
    h[static_cast<std::size_t>(m)] = h0[src] * w;
  }
  return h;
}

std::vector<double> apply_fir(std::span<const double> x,
                              std::span<const double> fir) {
  const auto n = static_cast<std::int64_t>(x.size());
  const auto len = static_cast<std::int64_t>(fir.size());
  const std::int64_t mid = (len - 1) / 2;
  std::vector<double> y(x.size(), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::int64_t m = 0; m < len; ++m) {
      const std::int64_t idx = i + m - mid;
      if (idx < 0 || idx >= n) continue;
      acc += fir[static_cast<std::size_t>(m)] *
             x[static_cast<std::size_t>(idx)];
    }
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

AudioBuffer augment(const AudioBuffer& frame, const AugmentConfig& cfg,
                    std::uint64_t seed) {
  if (static_cast<int>(frame.samples.size()) <= cfg.fir_length) {
    throw std::invalid_argument("augment: frame shorter than the FIR filter");
  }
  Rng rng(seed);
  AudioBuffer out = frame;

  // 1. white noise at a random SNR (skipped for infinite bounds)
  if (std::isfinite(cfg.snr_db_lo) && std::isfinite(cfg.snr_db_hi)) {
    const double snr = rng.uniform(cfg.snr_db_lo, cfg.snr_db_hi);
    double power = 0.0;
    for (double s : out.samples) power += s * s;
    if (power > 0.0) out = add_noise(out, snr, rng.next_u64());
  }

  // 2. random amplitude-response FIR
  std::vector<double> controls(
      static_cast<std::size_t>(std::max(2, cfg.fir_control_points)));
  for (double& c : controls) {
    c = rng.uniform(-cfg.fir_db_range, cfg.fir_db_range);
  }
  const std::vector<double> fir = design_fir(controls, cfg.fir_length);
  out.samples = apply_fir(out.samples, fir);

  // 3. random gain
  const double gain_db = rng.uniform(cfg.gain_db_lo, cfg.gain_db_hi);
  const double gain = std::pow(10.0, gain_db / 20.0);
  for (double& s : out.samples) s *= gain;
  return out;
}

namespace {

void check_train_config(const TrainConfig& cfg, const KernelBank& bank) {
  if (cfg.batch_size == 0 || cfg.steps == 0) {
    throw std::invalid_argument("train: batch_size and steps must be > 0");
  }
  if (!(cfg.alpha > 0.0)) {
    throw std::invalid_argument("train: alpha must be positive");
  }
  if (cfg.shift_range_semitones < 0 ||
      static_cast<std::size_t>(cfg.shift_range_semitones) *
              bank.pitch_grid.bins_per_semitone >=
          bank.pitch_grid.size()) {
    throw std::invalid_argument(
        "train: shift range in bins must stay below the candidate count");
  }
}

[[noreturn]] void diverged(std::size_t step, double loss) {
  std::ostringstream msg;
  msg << "train: non-finite loss " << loss << " at step " << step
      << "; lower the learning rate or loss weights";
  throw std::runtime_error(msg.str());
}

}  // namespace

TrainResult train_self_supervised(const std::vector<AudioBuffer>& corpus,
                                  const KernelBank& bank,
                                  const ScorerConfig& scorer_cfg,
                                  const TrainConfig& cfg) {
  if (corpus.empty()) {
    throw std::invalid_argument("train_self_supervised: empty corpus");
  }
  check_train_config(cfg, bank);

  TrainResult result;
  result.encoder = make_encoder(bank.pitch_grid.size(), cfg.n_taps,
                                cfg.init_noise_sigma,
                                mix_seed(cfg.seed, 0xE11C));
  ToeplitzEncoder& enc = result.encoder;
  AdamState adam(enc.taps.size());
  std::vector<double> grad(enc.taps.size());
  std::vector<double> scratch(enc.taps.size());

  for (std::size_t step = 0; step < cfg.steps; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < cfg.batch_size; ++b) {
      Rng rng(mix_seed(cfg.seed, step + 1, b + 1));
      const AudioBuffer& clip =
          corpus[static_cast<std::size_t>(rng.uniform_int(
              0, static_cast<int>(corpus.size()) - 1))];
      const double dur = clip.duration_s();
      const double t = rng.uniform(0.25 * dur, 0.75 * dur);
      const int k = rng.uniform_int(-cfg.shift_range_semitones,
                                    cfg.shift_range_semitones);
      const std::uint64_t aug_seed = rng.next_u64();

      const double ratio = std::pow(2.0, k / 12.0);
      const AudioBuffer shifted = resample_shift(clip, k);
      const AudioBuffer augmented = augment(clip, cfg.augment, aug_seed);

      const auto center = static_cast<std::int64_t>(
          std::llround(t * clip.sample_rate));
      const auto center_shifted = static_cast<std::int64_t>(
          std::llround(t * clip.sample_rate / ratio));

      const std::vector<double> s =
          score_frame(clip, center, bank, scorer_cfg).scores;
      const std::vector<double> s_k =
          score_frame(shifted, center_shifted, bank, scorer_cfg).scores;
      const std::vector<double> s_aug =
          score_frame(augmented, center, bank, scorer_cfg).scores;

      const int k_bins = k * bank.pitch_grid.bins_per_semitone;
      double sample_loss = 0.0;

      std::fill(scratch.begin(), scratch.end(), 0.0);
      sample_loss += cfg.w_equiv * loss_equivariance_grad(
                                       enc, s, s_k, k_bins, cfg.alpha,
                                       cfg.huber_delta, scratch);
      axpy(grad, cfg.w_equiv, scratch);

      std::fill(scratch.begin(), scratch.end(), 0.0);
      sample_loss += cfg.w_sce * loss_sce_grad(enc, s, s_k, k_bins, scratch);
      axpy(grad, cfg.w_sce, scratch);

      std::fill(scratch.begin(), scratch.end(), 0.0);
      sample_loss += cfg.w_inv * loss_invariance_grad(enc, s, s_aug, scratch);
      axpy(grad, cfg.w_inv, scratch);

      loss_sum += sample_loss;
    }
    const double inv_batch = 1.0 / static_cast<double>(cfg.batch_size);
    for (double& g : grad) g *= inv_batch;
    const double mean_loss = loss_sum * inv_batch;
    if (!std::isfinite(mean_loss)) diverged(step, mean_loss);
    adam.step(enc.taps, grad, cfg.lr);
    result.loss_history.push_back(mean_loss);
  }
  return result;
}

TrainResult train_supervised(const std::vector<LabeledClip>& corpus,
                             const KernelBank& bank,
                             const ScorerConfig& scorer_cfg,
                             const TrainConfig& cfg) {
  check_train_config(cfg, bank);

  // Index of every annotated voiced frame.
  struct Sample {
    std::size_t clip;
    std::size_t frame;
  };
  std::vector<Sample> samples;
  for (std::size_t c = 0; c < corpus.size(); ++c) {
    for (std::size_t j = 0; j < corpus[c].annotation.f0.size(); ++j) {
      if (corpus[c].annotation.f0[j] > 0.0) samples.push_back({c, j});
    }
  }
  if (samples.empty()) {
    throw std::invalid_argument(
        "train_supervised: corpus has no annotated voiced frames");
  }

  TrainResult result;
  result.encoder = make_encoder(bank.pitch_grid.size(), cfg.n_taps,
                                cfg.init_noise_sigma,
                                mix_seed(cfg.seed, 0xE11C));
  ToeplitzEncoder& enc = result.encoder;
  AdamState adam(enc.taps.size());
  std::vector<double> grad(enc.taps.size());
  std::vector<double> scratch(enc.taps.size());

  for (std::size_t step = 0; step < cfg.steps; ++step) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss_sum = 0.0;
    for (std::size_t b = 0; b < cfg.batch_size; ++b) {
      Rng rng(mix_seed(cfg.seed, step + 1, b + 1));
      const Sample& sample = samples[static_cast<std::size_t>(rng.uniform_int(
          0, static_cast<int>(samples.size()) - 1))];
      const LabeledClip& clip = corpus[sample.clip];
      const double f0 = clip.annotation.f0[sample.frame];
      const auto center = static_cast<std::int64_t>(std::llround(
          static_cast<double>(sample.frame) * clip.annotation.hop_seconds *
          clip.audio.sample_rate));
      const std::vector<double> s =
          score_frame(clip.audio, center, bank, scorer_cfg).scores;
      const std::vector<double> target =
          gaussian_target(f0, bank.pitch_grid, cfg.sigma_bins);

      std::fill(scratch.begin(), scratch.end(), 0.0);
      loss_sum += loss_supervised_grad(enc, s, target, scratch);
      axpy(grad, 1.0, scratch);
    }
    const double inv_batch = 1.0 / static_cast<double>(cfg.batch_size);
    for (double& g : grad) g *= inv_batch;
    const double mean_loss = loss_sum * inv_batch;
    if (!std::isfinite(mean_loss)) diverged(step, mean_loss);
    adam.step(enc.taps, grad, cfg.lr);
    result.loss_history.push_back(mean_loss);
  }
  return result;
}

namespace {

constexpr char kMagic[4] = {'S', 'W', 'T', 'E'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32_le(std::ofstream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
               static_cast<char>((v >> 16) & 0xFF),
               static_cast<char>((v >> 24) & 0xFF)};
  out.write(b, 4);
}

std::uint32_t get_u32_le(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw std::runtime_error(path + ": truncated weights file");
  }
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void save_weights(const ToeplitzEncoder& enc, const std::string& path) {
  check_encoder(enc);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out.write(kMagic, 4);
  put_u32_le(out, kFormatVersion);
  put_u32_le(out, static_cast<std::uint32_t>(enc.in_bins));
  put_u32_le(out, static_cast<std::uint32_t>(enc.out_bins));
  put_u32_le(out, static_cast<std::uint32_t>(enc.taps.size()));
  for (double t : enc.taps) {
    std::uint64_t bits;
    std::memcpy(&bits, &t, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    out.write(b, 8);
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

ToeplitzEncoder load_weights(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path + ": not a SWTE weights file (bad magic)");
  }
  const std::uint32_t version = get_u32_le(in, path);
  if (version != kFormatVersion) {
    throw std::runtime_error(path + ": unsupported weights format version " +
                             std::to_string(version));
  }
  ToeplitzEncoder enc;
  enc.in_bins = get_u32_le(in, path);
  enc.out_bins = get_u32_le(in, path);
  const std::uint32_t n_taps = get_u32_le(in, path);
  if (n_taps == 0 || n_taps % 2 == 0) {
    throw std::runtime_error(path + ": invalid tap count");
  }
  enc.taps.resize(n_taps);
  for (std::uint32_t i = 0; i < n_taps; ++i) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) {
      throw std::runtime_error(path + ": truncated weights file");
    }
    std::uint64_t bits = 0;
    for (int j = 0; j < 8; ++j) bits |= static_cast<std::uint64_t>(b[j]) << (8 * j);
    std::memcpy(&enc.taps[i], &bits, 8);
  }
  check_encoder(enc);
  return enc;
}

PitchTrack track_with_encoder(const AudioBuffer& buf, const KernelBank& bank,
                              const ScorerConfig& scorer_cfg,
                              const ToeplitzEncoder& enc, bool refine,
                              double score_threshold,
                              std::optional<double> entropy_threshold_nats) {
  check_encoder(enc);
  if (enc.in_bins != bank.pitch_grid.size()) {
    throw std::invalid_argument(
        "track_with_encoder: encoder bins do not match the pitch grid");
  }
  const std::vector<ScoreFrame> frames = score_track(buf, bank, scorer_cfg);
  PitchTrack out;
  out.hop_seconds = scorer_cfg.hop_seconds;
  out.frames.reserve(frames.size());
  for (const ScoreFrame& f : frames) {
    const double raw_conf = *std::max_element(f.scores.begin(), f.scores.end());
    ScoreFrame yframe;
    yframe.time_s = f.time_s;
    yframe.scores = forward(enc, f.scores);
    const PitchEstimate est = pick_pitch(yframe, bank.pitch_grid, refine);
    PitchFrame pf;
    pf.f0_hz = est.f0_hz;
    pf.confidence = est.confidence;
    pf.voiced = entropy_threshold_nats
                    ? voicing_from_entropy(yframe.scores,
                                           *entropy_threshold_nats)
                    : voicing_from_score(raw_conf, score_threshold);
    out.frames.push_back(pf);
  }
  return out;
}

}  // namespace swipe
