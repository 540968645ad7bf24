// swipepitch: SWIPE'-based pitch analysis, evaluation, synthesis and
// Toeplitz-encoder training from the command line.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "swipe/audio_io.hpp"
#include "swipe/encoder.hpp"
#include "swipe/kernels.hpp"
#include "swipe/metrics.hpp"
#include "swipe/rng.hpp"
#include "swipe/scorer.hpp"
#include "swipe/tracker.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct AnalysisOptions {
  double f_min = 27.5;
  double f_max = 8055.0;
  int bins_per_semitone = 3;
  std::string scale = "mel";
  std::string variant = "swipe_prime";
  std::size_t max_window = 16384;
  bool no_interp = false;
  bool refine = false;
  double threshold = 0.0;
  double hop = 0.01;
  std::uint64_t seed = 0;
  std::optional<int> expect_sample_rate;
};

void add_grid_flags(CLI::App* cmd, AnalysisOptions& opt) {
  cmd->add_option("--f-min", opt.f_min, "Lowest pitch candidate in Hz");
  cmd->add_option("--f-max", opt.f_max, "Highest pitch candidate in Hz");
  cmd->add_option("--bins-per-semitone", opt.bins_per_semitone,
                  "Candidate resolution");
  cmd->add_option("--scale", opt.scale, "Spectrum sampling scale")
      ->check(CLI::IsMember({"mel", "erb"}));
  cmd->add_option("--variant", opt.variant, "Kernel variant")
      ->check(CLI::IsMember({"swipe", "swipe_prime"}));
}

void add_scorer_flags(CLI::App* cmd, AnalysisOptions& opt) {
  cmd->add_option("--max-window", opt.max_window,
                  "Largest analysis window in samples (power of two)");
  cmd->add_flag("--no-interp", opt.no_interp,
                "Disable between-window score interpolation");
}

void add_analyze_flags(CLI::App* cmd, AnalysisOptions& opt) {
  add_grid_flags(cmd, opt);
  add_scorer_flags(cmd, opt);
  cmd->add_option("--hop", opt.hop, "Analysis hop in seconds");
  cmd->add_flag("--refine", opt.refine,
                "Refine estimates by parabolic interpolation");
  cmd->add_option("--threshold", opt.threshold,
                  "Score a frame must exceed to count as voiced");
  cmd->add_option("--expect-sample-rate", opt.expect_sample_rate,
                  "Fail if the input sample rate differs");
}

swipe::FrequencyScale parse_scale(const std::string& s) {
  return s == "erb" ? swipe::FrequencyScale::kErb
                    : swipe::FrequencyScale::kMelSlaney;
}

swipe::KernelVariant parse_variant(const std::string& s) {
  return s == "swipe" ? swipe::KernelVariant::kSwipe
                      : swipe::KernelVariant::kSwipePrime;
}

swipe::KernelBank make_bank(const AnalysisOptions& opt) {
  swipe::PitchGrid grid =
      swipe::build_pitch_grid(opt.f_min, opt.f_max, opt.bins_per_semitone);
  swipe::FrequencyGrid freq =
      swipe::frequency_grid_for(grid, parse_scale(opt.scale));
  return swipe::build_kernel_bank(std::move(grid), std::move(freq),
                                  parse_variant(opt.variant));
}

swipe::ScorerConfig make_scorer_config(const AnalysisOptions& opt) {
  swipe::ScorerConfig cfg;
  cfg.max_window_samples = opt.max_window;
  cfg.interpolate_windows = !opt.no_interp;
  cfg.hop_seconds = opt.hop;
  return cfg;
}

void check_sample_rate(const AnalysisOptions& opt,
                       const swipe::AudioBuffer& buf) {
  if (opt.expect_sample_rate && buf.sample_rate != *opt.expect_sample_rate) {
    throw std::invalid_argument(
        "input sample rate " + std::to_string(buf.sample_rate) +
        " does not match --expect-sample-rate " +
        std::to_string(*opt.expect_sample_rate));
  }
}

void warn_if_window_capped(const AnalysisOptions& opt, int sample_rate) {
  const double capped_below =
      8.0 * sample_rate / static_cast<double>(opt.max_window);
  if (opt.f_min < capped_below) {
    std::fprintf(stderr,
                 "warning: max window %zu samples (%.0f ms) caps the ideal "
                 "analysis window for candidates below %.1f Hz; low-pitch "
                 "reliability is reduced\n",
                 opt.max_window,
                 1000.0 * static_cast<double>(opt.max_window) / sample_rate,
                 capped_below);
  }
}

swipe::PitchTrack analyze_buffer(const swipe::AudioBuffer& buf,
                                 const AnalysisOptions& opt,
                                 const std::string& weights_path,
                                 std::optional<double> entropy_threshold) {
  const swipe::KernelBank bank = make_bank(opt);
  const swipe::ScorerConfig cfg = make_scorer_config(opt);
  warn_if_window_capped(opt, buf.sample_rate);
  if (weights_path.empty()) {
    return swipe::track(buf, bank, cfg, opt.refine, opt.threshold);
  }
  const swipe::ToeplitzEncoder enc = swipe::load_weights(weights_path);
  return swipe::track_with_encoder(buf, bank, cfg, enc, opt.refine,
                                   opt.threshold, entropy_threshold);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& wav_path, const std::string& out_csv,
                const AnalysisOptions& opt, const std::string& weights_path,
                std::optional<double> entropy_threshold) {
  const swipe::AudioBuffer buf = swipe::read_wav(wav_path);
  check_sample_rate(opt, buf);
  const swipe::PitchTrack track =
      analyze_buffer(buf, opt, weights_path, entropy_threshold);
  swipe::write_track(out_csv, track);
  return kExitOk;
}

// ------------------------------------------------------------------- eval

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int cmd_eval(const std::string& pred_path, const std::string& ann_path,
             AnalysisOptions opt, bool hop_given,
             const std::vector<double>& snrs, const std::string& weights_path,
             std::optional<double> entropy_threshold) {
  const swipe::Annotation ann = swipe::read_annotation(ann_path);
  const bool is_wav = ends_with(pred_path, ".wav") ||
                      ends_with(pred_path, ".WAV");
  if (!hop_given) opt.hop = ann.hop_seconds;

  if (!is_wav) {
    if (!snrs.empty()) {
      throw std::invalid_argument(
          "--snr requires a WAV input (noise is injected into audio)");
    }
    const swipe::PitchTrack track = swipe::read_track(pred_path);
    const swipe::EvalReport report = swipe::evaluate(track, ann);
    std::cout << swipe::report_text(report);
    std::cout << "csv: " << swipe::report_csv(report) << '\n';
    return kExitOk;
  }

  const swipe::AudioBuffer buf = swipe::read_wav(pred_path);
  check_sample_rate(opt, buf);
  if (snrs.empty()) {
    const swipe::PitchTrack track =
        analyze_buffer(buf, opt, weights_path, entropy_threshold);
    const swipe::EvalReport report = swipe::evaluate(track, ann);
    std::cout << swipe::report_text(report);
    std::cout << "csv: " << swipe::report_csv(report) << '\n';
    return kExitOk;
  }

  const auto estimator = [&](const swipe::AudioBuffer& b) {
    return analyze_buffer(b, opt, weights_path, entropy_threshold);
  };
  const auto sweep =
      swipe::evaluate_with_noise_sweep(buf, ann, estimator, snrs, opt.seed);
  std::cout << "snr_db,rpa,f_score,oa,n_voiced_ref,n_frames\n";
  for (const auto& [snr, report] : sweep) {
    if (std::isinf(snr)) {
      std::cout << "clean";
    } else {
      std::cout << snr;
    }
    std::cout << ',' << swipe::report_csv(report) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ synth

struct SynthOptions {
  std::string kind = "sawtooth";
  double f0 = 220.0;
  std::optional<double> glide_to;
  double vibrato_cents = 0.0;
  double vibrato_rate = 5.0;
  double dur = 1.0;
  int fs = 44100;
  double hop = 0.01;
  double amp = 0.8;
  std::uint64_t seed = 0;
  int corpus = 0;
  std::string out_dir;
  double f0_lo = 55.0;
  double f0_hi = 1760.0;
};

std::vector<double> build_curve(const SynthOptions& opt, double f0) {
  const auto n = static_cast<std::size_t>(std::llround(opt.dur / opt.hop));
  std::vector<double> curve(std::max<std::size_t>(n, 1));
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double t = static_cast<double>(i) * opt.hop;
    double f = f0;
    if (opt.glide_to) {
      f = f0 * std::pow(*opt.glide_to / f0, t / opt.dur);
    }
    if (opt.vibrato_cents != 0.0) {
      f *= std::pow(2.0, opt.vibrato_cents *
                             std::sin(2.0 * M_PI * opt.vibrato_rate * t) /
                             1200.0);
    }
    curve[i] = f;
  }
  return curve;
}

int cmd_synth(const SynthOptions& opt, const std::string& out_wav,
              const std::string& out_ann) {
  const swipe::Waveform kind = opt.kind == "sine" ? swipe::Waveform::kSine
                                                  : swipe::Waveform::kSawtooth;
  if (opt.corpus > 0) {
    if (opt.out_dir.empty()) {
      throw std::invalid_argument("--corpus requires --out-dir");
    }
    fs::create_directories(opt.out_dir);
    for (int i = 0; i < opt.corpus; ++i) {
      swipe::Rng rng(swipe::mix_seed(opt.seed, static_cast<std::uint64_t>(i)));
      const double f0 =
          std::exp(rng.uniform(std::log(opt.f0_lo), std::log(opt.f0_hi)));
      const auto result = swipe::synth_signal(kind, build_curve(opt, f0),
                                              opt.hop, opt.fs, opt.amp);
      char name[32];
      std::snprintf(name, sizeof(name), "clip_%03d", i);
      swipe::write_wav((fs::path(opt.out_dir) / (std::string(name) + ".wav"))
                           .string(),
                       result.audio);
      swipe::write_annotation(
          (fs::path(opt.out_dir) / (std::string(name) + ".txt")).string(),
          result.annotation);
    }
    return kExitOk;
  }

  if (out_wav.empty() || out_ann.empty()) {
    throw std::invalid_argument("synth needs OUT_WAV and OUT_ANNOTATION");
  }
  const auto result =
      swipe::synth_signal(kind, build_curve(opt, opt.f0), opt.hop, opt.fs,
                          opt.amp);
  swipe::write_wav(out_wav, result.audio);
  swipe::write_annotation(out_ann, result.annotation);
  return kExitOk;
}

// ------------------------------------------------------------------ train

struct TrainOptions {
  std::string mode;
  std::string out_weights;
  std::string loss_csv;
  std::size_t steps = 200;
  std::size_t batch = 32;
  double lr = 1e-4;
  double alpha = 0.0;  // 0 -> library default
  int k_max = 5;
  double snr_lo = 20.0;
  double snr_hi = 60.0;
  int fir_points = 8;
  double fir_db = 6.0;
  double gain_db = 6.0;
  double sigma_bins = 1.0;
  std::size_t n_taps = 647;
  double w_equiv = 1.0;
  double w_sce = 1.0;
  double w_inv = 1.0;
};

std::vector<fs::path> list_wavs(const std::string& dir) {
  std::vector<fs::path> paths;
  if (!fs::is_directory(dir)) {
    throw std::invalid_argument(dir + " is not a directory");
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".wav") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    throw std::invalid_argument(dir + " contains no .wav files");
  }
  return paths;
}

int cmd_train(const std::string& corpus_dir, const TrainOptions& topt,
              const AnalysisOptions& opt) {
  const swipe::KernelBank bank = make_bank(opt);
  swipe::ScorerConfig scorer_cfg = make_scorer_config(opt);

  swipe::TrainConfig cfg;
  cfg.lr = topt.lr;
  cfg.batch_size = topt.batch;
  cfg.steps = topt.steps;
  cfg.shift_range_semitones = topt.k_max;
  cfg.augment.snr_db_lo = topt.snr_lo;
  cfg.augment.snr_db_hi = topt.snr_hi;
  cfg.augment.fir_control_points = topt.fir_points;
  cfg.augment.fir_db_range = topt.fir_db;
  cfg.augment.gain_db_lo = -topt.gain_db;
  cfg.augment.gain_db_hi = topt.gain_db;
  cfg.sigma_bins = topt.sigma_bins;
  cfg.n_taps = topt.n_taps;
  cfg.seed = opt.seed;
  cfg.w_equiv = topt.w_equiv;
  cfg.w_sce = topt.w_sce;
  cfg.w_inv = topt.w_inv;
  if (topt.alpha > 0.0) cfg.alpha = topt.alpha;

  const std::vector<fs::path> wavs = list_wavs(corpus_dir);
  swipe::TrainResult result;
  if (topt.mode == "ssl") {
    std::vector<swipe::AudioBuffer> corpus;
    corpus.reserve(wavs.size());
    for (const auto& p : wavs) corpus.push_back(swipe::read_wav(p.string()));
    result = swipe::train_self_supervised(corpus, bank, scorer_cfg, cfg);
  } else {
    std::vector<swipe::LabeledClip> corpus;
    corpus.reserve(wavs.size());
    for (const auto& p : wavs) {
      fs::path ann_path = p;
      ann_path.replace_extension(".txt");
      if (!fs::exists(ann_path)) {
        throw std::invalid_argument("sup mode needs an annotation beside " +
                                    p.string());
      }
      corpus.push_back({swipe::read_wav(p.string()),
                        swipe::read_annotation(ann_path.string())});
    }
    result = swipe::train_supervised(corpus, bank, scorer_cfg, cfg);
  }

  swipe::save_weights(result.encoder, topt.out_weights);
  if (!topt.loss_csv.empty()) {
    std::ofstream out(topt.loss_csv);
    out << "step,loss\n";
    for (std::size_t i = 0; i < result.loss_history.size(); ++i) {
      out << i << ',' << result.loss_history[i] << '\n';
    }
  }
  std::fprintf(stderr, "trained %zu steps; final loss %.6f\n",
               result.loss_history.size(),
               result.loss_history.empty() ? 0.0 : result.loss_history.back());
  return kExitOk;
}

// ---------------------------------------------------------------- kernels

int cmd_kernels(const std::string& candidate, const std::string& out_csv,
                const AnalysisOptions& opt) {
  const swipe::PitchGrid grid =
      swipe::build_pitch_grid(opt.f_min, opt.f_max, opt.bins_per_semitone);
  const swipe::FrequencyGrid freq =
      swipe::frequency_grid_for(grid, parse_scale(opt.scale));

  // Bare integers below the candidate count are bin indices, anything else
  // is a frequency in Hz snapped to the nearest candidate.
  std::size_t index;
  char* end = nullptr;
  const long as_int = std::strtol(candidate.c_str(), &end, 10);
  const bool is_int = end == candidate.c_str() + candidate.size();
  if (is_int && as_int >= 0 &&
      static_cast<std::size_t>(as_int) < grid.size()) {
    index = static_cast<std::size_t>(as_int);
  } else {
    const double hz = std::strtod(candidate.c_str(), &end);
    if (end != candidate.c_str() + candidate.size() || hz <= 0.0) {
      throw std::invalid_argument("cannot parse candidate '" + candidate +
                                  "'");
    }
    if (hz < grid.f_min || hz > grid.f_max) {
      throw std::invalid_argument(
          "candidate " + candidate + " Hz is outside the pitch grid [" +
          std::to_string(grid.f_min) + ", " + std::to_string(grid.f_max) +
          "]");
    }
    index = grid.nearest_bin(hz);
  }

  const std::vector<double> kernel =
      swipe::kernel_for(grid.candidates[index], freq, parse_variant(opt.variant));
  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error(out_csv + ": cannot open for writing");
  out << "frequency_hz,value\n";
  char line[64];
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.6f,%.9f\n", freq.freqs[i], kernel[i]);
    out << line;
  }
  std::fprintf(stderr, "kernel for candidate %zu (%.2f Hz)\n", index,
               grid.candidates[index]);
  return kExitOk;
}

// ----------------------------------------------------------------- scores

int cmd_scores(const std::string& wav_path, const std::string& out_csv,
               double time_s, const AnalysisOptions& opt) {
  const swipe::AudioBuffer buf = swipe::read_wav(wav_path);
  check_sample_rate(opt, buf);
  const swipe::KernelBank bank = make_bank(opt);
  const swipe::ScorerConfig cfg = make_scorer_config(opt);
  const auto center =
      static_cast<std::int64_t>(std::llround(time_s * buf.sample_rate));
  const swipe::ScoreFrame frame = swipe::score_frame(buf, center, bank, cfg);
  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error(out_csv + ": cannot open for writing");
  out << "candidate_hz,score\n";
  char line[64];
  for (std::size_t c = 0; c < frame.scores.size(); ++c) {
    std::snprintf(line, sizeof(line), "%.6f,%.9f\n",
                  bank.pitch_grid.candidates[c], frame.scores[c]);
    out << line;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SWIPE' pitch estimation with an optional Toeplitz encoder"};
  app.require_subcommand(1);

  AnalysisOptions opt;

  // analyze
  std::string in_wav, out_csv, weights;
  std::optional<double> entropy_threshold;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Estimate a pitch track from a WAV file");
  analyze->add_option("input", in_wav, "Input WAV file")->required();
  analyze->add_option("output", out_csv, "Output track CSV")->required();
  add_analyze_flags(analyze, opt);
  analyze->add_option("--weights", weights,
                      "Apply a trained Toeplitz encoder (.swte)");
  analyze->add_option("--entropy-threshold", entropy_threshold,
                      "Voice frames whose output entropy (nats) is below "
                      "this (encoder mode)");
  analyze->add_option("--seed", opt.seed, "Random seed");

  // eval
  std::string pred_path, ann_path;
  std::vector<double> snrs;
  CLI::App* eval = app.add_subcommand(
      "eval", "Evaluate a track CSV or a WAV file against an annotation");
  eval->add_option("prediction", pred_path, "Track CSV or WAV file")
      ->required();
  eval->add_option("annotation", ann_path, "Reference annotation")->required();
  bool eval_hop_given = false;
  add_analyze_flags(eval, opt);
  eval->get_option("--hop")->trigger_on_parse()->each(
      [&](const std::string&) { eval_hop_given = true; });
  eval->add_option("--snr", snrs,
                   "Also evaluate with white noise at these SNRs (dB)")
      ->delimiter(',');
  eval->add_option("--weights", weights, "Toeplitz encoder weights");
  eval->add_option("--entropy-threshold", entropy_threshold,
                   "Entropy voicing threshold in nats (encoder mode)");
  eval->add_option("--seed", opt.seed, "Noise seed for --snr");

  // synth
  SynthOptions sopt;
  std::string synth_wav, synth_ann;
  CLI::App* synth =
      app.add_subcommand("synth", "Synthesize test signals with ground truth");
  synth->add_option("out_wav", synth_wav, "Output WAV (single-clip mode)");
  synth->add_option("out_annotation", synth_ann,
                    "Output annotation (single-clip mode)");
  synth->add_option("--kind", sopt.kind, "Waveform")
      ->check(CLI::IsMember({"sine", "sawtooth"}));
  synth->add_option("--f0", sopt.f0, "Fundamental in Hz");
  synth->add_option("--glide-to", sopt.glide_to,
                    "Exponential glide target in Hz");
  synth->add_option("--vibrato-cents", sopt.vibrato_cents,
                    "Vibrato depth in cents");
  synth->add_option("--vibrato-rate", sopt.vibrato_rate, "Vibrato rate in Hz");
  synth->add_option("--dur", sopt.dur, "Duration in seconds");
  synth->add_option("--fs", sopt.fs, "Sample rate");
  synth->add_option("--hop", sopt.hop, "Annotation hop in seconds");
  synth->add_option("--amp", sopt.amp, "Amplitude");
  synth->add_option("--seed", sopt.seed, "Corpus seed");
  synth->add_option("--corpus", sopt.corpus,
                    "Write this many random constant-pitch clips");
  synth->add_option("--out-dir", sopt.out_dir, "Corpus output directory");
  synth->add_option("--f0-lo", sopt.f0_lo, "Corpus pitch range low (Hz)");
  synth->add_option("--f0-hi", sopt.f0_hi, "Corpus pitch range high (Hz)");

  // train
  TrainOptions topt;
  std::string corpus_dir;
  CLI::App* train =
      app.add_subcommand("train", "Train the Toeplitz encoder on a corpus");
  train->add_option("corpus", corpus_dir, "Directory of .wav clips")
      ->required();
  train->add_option("--mode", topt.mode, "ssl (self-supervised) or sup")
      ->required()
      ->check(CLI::IsMember({"ssl", "sup"}));
  train->add_option("--out", topt.out_weights, "Output weights file (.swte)")
      ->required();
  train->add_option("--loss-csv", topt.loss_csv, "Per-step loss history CSV");
  train->add_option("--steps", topt.steps, "Training steps");
  train->add_option("--batch", topt.batch, "Batch size");
  train->add_option("--lr", topt.lr, "Adam learning rate");
  train->add_option("--alpha", topt.alpha, "Equivariance readout base");
  train->add_option("--k-max", topt.k_max, "Max pitch shift in semitones");
  train->add_option("--snr-lo", topt.snr_lo, "Augmentation SNR low (dB)");
  train->add_option("--snr-hi", topt.snr_hi, "Augmentation SNR high (dB)");
  train->add_option("--fir-points", topt.fir_points,
                    "FIR amplitude-response control points");
  train->add_option("--fir-db", topt.fir_db, "FIR response range (+- dB)");
  train->add_option("--gain-db", topt.gain_db, "Gain range (+- dB)");
  train->add_option("--sigma-bins", topt.sigma_bins,
                    "Supervised target blur in bins");
  train->add_option("--taps", topt.n_taps, "Filter size");
  train->add_option("--w-equiv", topt.w_equiv, "Equivariance loss weight");
  train->add_option("--w-sce", topt.w_sce, "Shifted cross-entropy weight");
  train->add_option("--w-inv", topt.w_inv, "Invariance loss weight");
  train->add_option("--seed", opt.seed, "Training seed");
  add_grid_flags(train, opt);
  add_scorer_flags(train, opt);
  train->add_option("--hop", opt.hop, "Analysis hop in seconds");

  // kernels
  std::string candidate, kernels_csv;
  CLI::App* kernels = app.add_subcommand(
      "kernels", "Export one candidate's spectral kernel as CSV");
  kernels->add_option("candidate", candidate, "Candidate index or Hz")
      ->required();
  kernels->add_option("output", kernels_csv, "Output CSV")->required();
  add_grid_flags(kernels, opt);

  // scores
  std::string scores_wav, scores_csv;
  double scores_time = 0.0;
  CLI::App* scores = app.add_subcommand(
      "scores", "Export all candidate scores for one analysis instant");
  scores->add_option("input", scores_wav, "Input WAV file")->required();
  scores->add_option("output", scores_csv, "Output CSV")->required();
  scores->add_option("--time", scores_time, "Frame center in seconds");
  add_grid_flags(scores, opt);
  add_scorer_flags(scores, opt);
  scores->add_option("--expect-sample-rate", opt.expect_sample_rate,
                     "Fail if the input sample rate differs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(analyze)) {
      return cmd_analyze(in_wav, out_csv, opt, weights, entropy_threshold);
    }
    if (app.got_subcommand(eval)) {
      return cmd_eval(pred_path, ann_path, opt, eval_hop_given, snrs, weights,
                      entropy_threshold);
    }
    if (app.got_subcommand(synth)) {
      return cmd_synth(sopt, synth_wav, synth_ann);
    }
    if (app.got_subcommand(train)) {
      return cmd_train(corpus_dir, topt, opt);
    }
    if (app.got_subcommand(kernels)) {
      return cmd_kernels(candidate, kernels_csv, opt);
    }
    if (app.got_subcommand(scores)) {
      return cmd_scores(scores_wav, scores_csv, scores_time, opt);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
