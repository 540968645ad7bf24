#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swipe/types.hpp"

namespace swipe {

// Reads a RIFF/WAVE file (PCM 16-bit or IEEE float 32-bit). Multichannel
// audio is mixed down to mono by averaging; 16-bit samples are scaled by
// 1/32768. Throws std::runtime_error on malformed or unsupported files.
AudioBuffer read_wav(const std::string& path);

// Writes a mono IEEE float 32-bit WAV file.
void write_wav(const std::string& path, const AudioBuffer& buf);

enum class Waveform { kSine, kSawtooth };

struct SynthResult {
  AudioBuffer audio;
  Annotation annotation;
};

// Phase-continuous synthesis of a sine or band-limited sawtooth following
// f0_curve, which holds one Hz value per annotation hop. The sawtooth is
// additive with harmonic k at amplitude (2/pi)/k, harmonics at or above
// Nyquist omitted. The returned annotation is the requested curve.
SynthResult synth_signal(Waveform kind, const std::vector<double>& f0_curve,
                         double hop_seconds, int sample_rate,
                         double amplitude = 0.8);

// Adds white Gaussian noise scaled so that 10*log10(P_signal/P_noise) equals
// snr_db. An infinite snr_db returns the input unchanged. Throws on silent
// input (SNR undefined).
AudioBuffer add_noise(const AudioBuffer& buf, double snr_db,
                      std::uint64_t seed);

// Resamples by 2^(semitones/12) with windowed-sinc interpolation, keeping
// the sample_rate tag, so a periodic input's f0 is multiplied by that ratio.
// |semitones| must be <= 24.
AudioBuffer resample_shift(const AudioBuffer& buf, double semitones);

// Parses "time f0" rows (space, tab or comma separated; a non-numeric header
// row is skipped). The hop is inferred from the first two timestamps and
// all rows must be uniformly spaced within 1%.
Annotation read_annotation(const std::string& path);

// Writes "time f0" rows readable by read_annotation.
void write_annotation(const std::string& path, const Annotation& annotation);

// Writes "time,f0,confidence,voiced" CSV rows with 6-decimal floats.
void write_track(const std::string& path, const PitchTrack& track);

// Reads a track written by write_track. Two-column files are accepted as
// (time, f0) with voiced = f0 > 0.
PitchTrack read_track(const std::string& path);

}  // namespace swipe
