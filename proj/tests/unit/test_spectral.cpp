#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "swipe/fft.hpp"
#include "swipe/rng.hpp"
#include "swipe/spectral.hpp"
#include "util.hpp"

using namespace swipe;

TEST_CASE("mel_slaney matches its defining formula") {
  CHECK(mel_slaney(0.0) == 0.0);
  CHECK(mel_slaney(1000.0) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(mel_slaney(500.0) == doctest::Approx(7.5).epsilon(1e-12));
  // logarithmic branch: 27 steps per factor 6.4
  CHECK(mel_slaney(6400.0) == doctest::Approx(15.0 + 27.0).epsilon(1e-12));
  for (double f : {50.0, 500.0, 5000.0}) {
    CHECK(mel_slaney_inv(mel_slaney(f)) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("erb_scale matches Glasberg-Moore") {
  CHECK(erb_scale(0.0) == 0.0);
  CHECK(erb_scale(1000.0) ==
        doctest::Approx(21.4 * std::log10(5.37)).epsilon(1e-12));
  for (double f : {50.0, 500.0, 5000.0}) {
    CHECK(erb_scale_inv(erb_scale(f)) == doctest::Approx(f).epsilon(1e-12));
  }
}

TEST_CASE("build_grid endpoints and spacing") {
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, 6.875, 10068.75, 1024);
  REQUIRE(grid.freqs.size() == 1024);
  CHECK(grid.freqs.front() == 6.875);
  CHECK(grid.freqs.back() == 10068.75);
  for (std::size_t i = 1; i < grid.freqs.size(); ++i) {
    CHECK(grid.freqs[i] > grid.freqs[i - 1]);
  }
  // Equal spacing in scale units.
  const double step0 = mel_slaney(grid.freqs[1]) - mel_slaney(grid.freqs[0]);
  const double step500 =
      mel_slaney(grid.freqs[501]) - mel_slaney(grid.freqs[500]);
  CHECK(step0 == doctest::Approx(step500).epsilon(1e-9));

  // n = 3 in the linear mel region: the middle point is the mel midpoint.
  const FrequencyGrid tiny = build_grid(FrequencyScale::kMelSlaney, 100.0,
                                        900.0, 3);
  CHECK(tiny.freqs[1] == doctest::Approx(500.0).epsilon(1e-12));

  CHECK_THROWS_AS(build_grid(FrequencyScale::kMelSlaney, 100.0, 50.0),
                  std::invalid_argument);
}

TEST_CASE("rfft matches a direct DFT") {
  Rng rng(11);
  std::vector<double> x(64);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  const auto bins = fft::rfft(x, 64);
  REQUIRE(bins.size() == 33);
  double max_err = 0.0;
  for (std::size_t k = 0; k < bins.size(); ++k) {
    std::complex<double> direct(0.0, 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
      const double w = -2.0 * M_PI * static_cast<double>(k * n) / 64.0;
      direct += x[n] * std::complex<double>(std::cos(w), std::sin(w));
    }
    max_err = std::max(max_err, std::abs(direct - bins[k]));
  }
  CHECK(max_err < 1e-9);
}

TEST_CASE("irfft inverts rfft") {
  Rng rng(13);
  std::vector<double> x(128);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  const auto back = fft::irfft(fft::rfft(x, 128), 128);
  REQUIRE(back.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-12));
  }
}

TEST_CASE("rfft rejects non-power-of-two lengths") {
  std::vector<double> x(10, 0.0);
  CHECK_THROWS_AS(fft::rfft(x, 100), std::invalid_argument);
}

TEST_CASE("windowed_spectrum of silence is zero") {
  AudioBuffer buf;
  buf.sample_rate = 44100;
  buf.samples.assign(4096, 0.0);
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, 100.0, 8000.0, 64);
  const SampledSpectrum spec = windowed_spectrum(buf, 2048, 1024, 2048, grid);
  for (double m : spec.mag) CHECK(m == 0.0);
}

TEST_CASE("windowed_spectrum matches the analytic Hann main lobe") {
  // Sine exactly on FFT bin 100 with window == fft length: the periodic
  // Hann transform has support {k0-1, k0, k0+1} and peak A*L/4.
  const int fs = 44100;
  const std::size_t len = 1024;
  const double f = 100.0 * fs / static_cast<double>(len);
  const double amp = 0.6;
  AudioBuffer buf;
  buf.sample_rate = fs;
  buf.samples.resize(8192);
  for (std::size_t n = 0; n < buf.samples.size(); ++n) {
    buf.samples[n] = amp * std::sin(2.0 * M_PI * f * n / fs);
  }
  // Grid whose first point is exactly the sine frequency.
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, f, 8000.0, 16);
  const SampledSpectrum spec = windowed_spectrum(buf, 4096, len, len, grid);
  const double peak = amp * static_cast<double>(len) / 4.0;
  CHECK(spec.mag[0] == doctest::Approx(peak).epsilon(0.01));
  // Points two or more bins away interpolate between exact zeros.
  for (std::size_t i = 2; i < grid.freqs.size(); ++i) {
    CHECK(spec.mag[i] < 1e-6 * peak);
  }
}

TEST_CASE("windowed_spectrum is linear in amplitude") {
  AudioBuffer buf = testutil::sawtooth_clip(220.0, 0.2, 44100);
  AudioBuffer doubled = buf;
  for (double& s : doubled.samples) s *= 2.0;
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, 50.0, 8000.0, 256);
  const SampledSpectrum a = windowed_spectrum(buf, 4000, 2048, 4096, grid);
  const SampledSpectrum b = windowed_spectrum(doubled, 4000, 2048, 4096, grid);
  for (std::size_t i = 0; i < a.mag.size(); ++i) {
    CHECK(b.mag[i] == doctest::Approx(2.0 * a.mag[i]).epsilon(1e-12));
  }
}

TEST_CASE("windowed_spectrum zeroes grid points above Nyquist") {
  AudioBuffer buf = testutil::sine_clip(440.0, 0.2, 8000);
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, 100.0, 7000.0, 128);
  const SampledSpectrum spec = windowed_spectrum(buf, 800, 512, 1024, grid);
  for (std::size_t i = 0; i < grid.freqs.size(); ++i) {
    if (grid.freqs[i] > 4000.0) CHECK(spec.mag[i] == 0.0);
  }
}

TEST_CASE("windowed_spectrum is shift-covariant for periodic signals") {
  // 441 Hz at 44.1 kHz has an exact 100-sample period.
  AudioBuffer buf = testutil::sine_clip(441.0, 0.5, 44100);
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, 50.0, 8000.0, 512);
  const SampledSpectrum a = windowed_spectrum(buf, 11025, 2048, 4096, grid);
  const SampledSpectrum b = windowed_spectrum(buf, 11125, 2048, 4096, grid);
  for (std::size_t i = 0; i < a.mag.size(); ++i) {
    if (a.mag[i] > 1e-12) {
      CHECK(b.mag[i] == doctest::Approx(a.mag[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("windowed_spectrum validates its arguments") {
  AudioBuffer buf = testutil::sine_clip(440.0, 0.1, 8000);
  const FrequencyGrid grid =
      build_grid(FrequencyScale::kMelSlaney, 100.0, 3000.0, 32);
  CHECK_THROWS_AS(windowed_spectrum(buf, 100, 512, 1000, grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(windowed_spectrum(buf, 100, 2048, 1024, grid),
                  std::invalid_argument);
}
