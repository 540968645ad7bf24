// Python bindings for the swipepitch core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "swipe/audio_io.hpp"
#include "swipe/encoder.hpp"
#include "swipe/kernels.hpp"
#include "swipe/metrics.hpp"
#include "swipe/scorer.hpp"
#include "swipe/spectral.hpp"
#include "swipe/tracker.hpp"

namespace py = pybind11;
using namespace swipe;

PYBIND11_MODULE(_core, m) {
  m.doc() = "SWIPE' pitch estimation with a trainable Toeplitz encoder";

  py::class_<AudioBuffer>(m, "AudioBuffer")
      .def(py::init<>())
      .def(py::init([](std::vector<double> samples, int sample_rate) {
             return AudioBuffer{std::move(samples), sample_rate};
           }),
           py::arg("samples"), py::arg("sample_rate"))
      .def_readwrite("samples", &AudioBuffer::samples)
      .def_readwrite("sample_rate", &AudioBuffer::sample_rate)
      .def("duration_s", &AudioBuffer::duration_s);

  py::class_<Annotation>(m, "Annotation")
      .def(py::init<>())
      .def(py::init([](double hop_seconds, std::vector<double> f0) {
             return Annotation{hop_seconds, std::move(f0)};
           }),
           py::arg("hop_seconds"), py::arg("f0"))
      .def_readwrite("hop_seconds", &Annotation::hop_seconds)
      .def_readwrite("f0", &Annotation::f0);

  py::class_<PitchFrame>(m, "PitchFrame")
      .def_readwrite("f0_hz", &PitchFrame::f0_hz)
      .def_readwrite("confidence", &PitchFrame::confidence)
      .def_readwrite("voiced", &PitchFrame::voiced);

  py::class_<PitchTrack>(m, "PitchTrack")
      .def(py::init<>())
      .def_readwrite("hop_seconds", &PitchTrack::hop_seconds)
      .def_readwrite("frames", &PitchTrack::frames)
      .def("f0", [](const PitchTrack& t) {
        std::vector<double> out;
        out.reserve(t.frames.size());
        for (const auto& f : t.frames) out.push_back(f.f0_hz);
        return out;
      });

  // audio i/o and synthesis
  m.def("read_wav", &read_wav, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("path"), py::arg("buf"));
  py::enum_<Waveform>(m, "Waveform")
      .value("SINE", Waveform::kSine)
      .value("SAWTOOTH", Waveform::kSawtooth);
  m.def(
      "synth_signal",
      [](Waveform kind, const std::vector<double>& curve, double hop, int fs,
         double amplitude) {
        SynthResult r = synth_signal(kind, curve, hop, fs, amplitude);
        return py::make_tuple(r.audio, r.annotation);
      },
      py::arg("kind"), py::arg("f0_curve"), py::arg("hop_seconds"),
      py::arg("sample_rate"), py::arg("amplitude") = 0.8);
  m.def("add_noise", &add_noise, py::arg("buf"), py::arg("snr_db"),
        py::arg("seed") = 0);
  m.def("resample_shift", &resample_shift, py::arg("buf"),
        py::arg("semitones"));
  m.def("read_annotation", &read_annotation, py::arg("path"));
  m.def("write_annotation", &write_annotation, py::arg("path"),
        py::arg("annotation"));
  m.def("write_track", &write_track, py::arg("path"), py::arg("track"));
  m.def("read_track", &read_track, py::arg("path"));

  // frequency scales and grids
  py::enum_<FrequencyScale>(m, "FrequencyScale")
      .value("MEL_SLANEY", FrequencyScale::kMelSlaney)
      .value("ERB", FrequencyScale::kErb);
  m.def("mel_slaney", &mel_slaney);
  m.def("mel_slaney_inv", &mel_slaney_inv);
  m.def("erb_scale", &erb_scale);
  m.def("erb_scale_inv", &erb_scale_inv);
  py::class_<FrequencyGrid>(m, "FrequencyGrid")
      .def_readonly("f_lo", &FrequencyGrid::f_lo)
      .def_readonly("f_hi", &FrequencyGrid::f_hi)
      .def_readonly("freqs", &FrequencyGrid::freqs);
  m.def("build_grid", &build_grid, py::arg("scale"), py::arg("f_lo"),
        py::arg("f_hi"), py::arg("n") = 1024);

  // pitch candidates and kernels
  py::class_<PitchGrid>(m, "PitchGrid")
      .def_readonly("f_min", &PitchGrid::f_min)
      .def_readonly("f_max", &PitchGrid::f_max)
      .def_readonly("bins_per_semitone", &PitchGrid::bins_per_semitone)
      .def_readonly("candidates", &PitchGrid::candidates)
      .def("bin_of", &PitchGrid::bin_of)
      .def("nearest_bin", &PitchGrid::nearest_bin);
  m.def("build_pitch_grid", &build_pitch_grid, py::arg("f_min") = 27.5,
        py::arg("f_max") = 8055.0, py::arg("bins_per_semitone") = 3);
  m.def("frequency_grid_for", &frequency_grid_for, py::arg("grid"),
        py::arg("scale"), py::arg("n") = 1024);
  py::enum_<KernelVariant>(m, "KernelVariant")
      .value("SWIPE", KernelVariant::kSwipe)
      .value("SWIPE_PRIME", KernelVariant::kSwipePrime);
  m.def("kernel_for", &kernel_for, py::arg("f_c"), py::arg("freq_grid"),
        py::arg("variant") = KernelVariant::kSwipePrime);
  py::class_<KernelBank>(m, "KernelBank")
      .def_readonly("pitch_grid", &KernelBank::pitch_grid)
      .def_readonly("ideal_window_s", &KernelBank::ideal_window_s)
      .def("kernel", [](const KernelBank& bank, std::size_t c) {
        auto k = bank.kernel(c);
        return std::vector<double>(k.begin(), k.end());
      });
  m.def("build_kernel_bank", &build_kernel_bank, py::arg("grid"),
        py::arg("freq_grid"), py::arg("variant") = KernelVariant::kSwipePrime);

  // scoring and tracking
  py::class_<ScorerConfig>(m, "ScorerConfig")
      .def(py::init<>())
      .def_readwrite("max_window_samples", &ScorerConfig::max_window_samples)
      .def_readwrite("interpolate_windows", &ScorerConfig::interpolate_windows)
      .def_readwrite("hop_seconds", &ScorerConfig::hop_seconds);
  py::class_<ScoreFrame>(m, "ScoreFrame")
      .def_readonly("time_s", &ScoreFrame::time_s)
      .def_readonly("scores", &ScoreFrame::scores);
  m.def("score_frame", &score_frame, py::arg("buf"), py::arg("center_sample"),
        py::arg("bank"), py::arg("cfg"));
  m.def("score_track", &score_track, py::arg("buf"), py::arg("bank"),
        py::arg("cfg"));
  m.def("track", &track, py::arg("buf"), py::arg("bank"), py::arg("cfg"),
        py::arg("refine") = true, py::arg("voicing_threshold") = 0.0);

  // encoder
  py::class_<ToeplitzEncoder>(m, "ToeplitzEncoder")
      .def(py::init<>())
      .def_readwrite("taps", &ToeplitzEncoder::taps)
      .def_readwrite("in_bins", &ToeplitzEncoder::in_bins)
      .def_readwrite("out_bins", &ToeplitzEncoder::out_bins);
  m.def("make_encoder", &make_encoder, py::arg("bins") = 295,
        py::arg("n_taps") = 647, py::arg("noise_sigma") = 1e-3,
        py::arg("seed") = 0);
  m.def("forward",
        [](const ToeplitzEncoder& enc, const std::vector<double>& scores) {
          return forward(enc, scores);
        });
  m.def("phi", [](const std::vector<double>& y, double alpha) {
    return phi(y, alpha);
  });
  m.def("entropy_nats", [](const std::vector<double>& y) {
    return entropy_nats(y);
  });
  m.def("voicing_from_entropy",
        [](const std::vector<double>& y, double threshold) {
          return voicing_from_entropy(y, threshold);
        });
  m.def("save_weights", &save_weights);
  m.def("load_weights", &load_weights);
  py::class_<AugmentConfig>(m, "AugmentConfig")
      .def(py::init<>())
      .def_readwrite("snr_db_lo", &AugmentConfig::snr_db_lo)
      .def_readwrite("snr_db_hi", &AugmentConfig::snr_db_hi)
      .def_readwrite("fir_control_points", &AugmentConfig::fir_control_points)
      .def_readwrite("fir_db_range", &AugmentConfig::fir_db_range)
      .def_readwrite("fir_length", &AugmentConfig::fir_length)
      .def_readwrite("gain_db_lo", &AugmentConfig::gain_db_lo)
      .def_readwrite("gain_db_hi", &AugmentConfig::gain_db_hi);
  m.def("augment", &augment, py::arg("frame"), py::arg("cfg"),
        py::arg("seed") = 0);
  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &TrainConfig::alpha)
      .def_readwrite("w_equiv", &TrainConfig::w_equiv)
      .def_readwrite("w_sce", &TrainConfig::w_sce)
      .def_readwrite("w_inv", &TrainConfig::w_inv)
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("steps", &TrainConfig::steps)
      .def_readwrite("shift_range_semitones",
                     &TrainConfig::shift_range_semitones)
      .def_readwrite("augment", &TrainConfig::augment)
      .def_readwrite("sigma_bins", &TrainConfig::sigma_bins)
      .def_readwrite("n_taps", &TrainConfig::n_taps)
      .def_readwrite("seed", &TrainConfig::seed);
  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("encoder", &TrainResult::encoder)
      .def_readonly("loss_history", &TrainResult::loss_history);
  py::class_<LabeledClip>(m, "LabeledClip")
      .def(py::init([](AudioBuffer audio, Annotation ann) {
             return LabeledClip{std::move(audio), std::move(ann)};
           }),
           py::arg("audio"), py::arg("annotation"))
      .def_readwrite("audio", &LabeledClip::audio)
      .def_readwrite("annotation", &LabeledClip::annotation);
  m.def("train_self_supervised", &train_self_supervised, py::arg("corpus"),
        py::arg("bank"), py::arg("scorer_cfg"), py::arg("cfg"));
  m.def("train_supervised", &train_supervised, py::arg("corpus"),
        py::arg("bank"), py::arg("scorer_cfg"), py::arg("cfg"));
  m.def("track_with_encoder", &track_with_encoder, py::arg("buf"),
        py::arg("bank"), py::arg("scorer_cfg"), py::arg("enc"),
        py::arg("refine") = true, py::arg("score_threshold") = 0.0,
        py::arg("entropy_threshold_nats") =
            std::optional<double>(std::nullopt));

  // metrics
  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("rpa", &EvalReport::rpa)
      .def_readonly("f_score", &EvalReport::f_score)
      .def_readonly("oa", &EvalReport::oa)
      .def_readonly("n_voiced_ref", &EvalReport::n_voiced_ref)
      .def_readonly("n_frames", &EvalReport::n_frames);
  m.def("cents_diff", &cents_diff);
  m.def("evaluate", &evaluate, py::arg("track"), py::arg("annotation"));
  m.def("report_csv", &report_csv);
  m.def("report_text", &report_text);
}
