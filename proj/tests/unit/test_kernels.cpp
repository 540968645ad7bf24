#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "swipe/kernels.hpp"
#include "swipe/rng.hpp"
#include "swipe/scorer.hpp"
#include "swipe/spectral.hpp"
#include "util.hpp"

using namespace swipe;

namespace {

std::size_t nearest_grid_index(const FrequencyGrid& grid, double f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.freqs.size(); ++i) {
    if (std::abs(grid.freqs[i] - f) < std::abs(grid.freqs[best] - f)) best = i;
  }
  return best;
}

}  // namespace

TEST_CASE("build_pitch_grid default layout") {
  const PitchGrid grid = build_pitch_grid();
  CHECK(grid.size() == 295);
  CHECK(grid.candidates[0] == 27.5);
  CHECK(grid.candidates[36] == doctest::Approx(55.0).epsilon(1e-12));
  for (double c : grid.candidates) CHECK(c <= 8055.0 * (1 + 1e-12));
}

TEST_CASE("build_pitch_grid semitone spacing") {
  const PitchGrid grid = build_pitch_grid(440.0, 880.0, 1);
  REQUIRE(grid.size() == 13);
  CHECK(grid.candidates.back() == doctest::Approx(880.0).epsilon(1e-12));
}

TEST_CASE("frequency_grid_for spans a quarter below to a quarter above") {
  const PitchGrid grid = build_pitch_grid();
  const FrequencyGrid freq =
      frequency_grid_for(grid, FrequencyScale::kMelSlaney);
  REQUIRE(freq.freqs.size() == 1024);
  CHECK(freq.freqs.front() == doctest::Approx(6.875));
  CHECK(freq.freqs.back() == doctest::Approx(10068.75));
}

TEST_CASE("kernels are unit norm with both signs") {
  const KernelBank bank = testutil::make_bank();
  REQUIRE(bank.pitch_grid.size() == 295);
  for (std::size_t c = 0; c < bank.pitch_grid.size(); c += 17) {
    const auto k = bank.kernel(c);
    double norm = 0.0;
    double min_v = 1.0, max_v = -1.0;
    for (double v : k) {
      norm += v * v;
      min_v = std::min(min_v, v);
      max_v = std::max(max_v, v);
    }
    CAPTURE(c);
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(min_v < 0.0);
    CHECK(max_v > 0.0);
  }
}

TEST_CASE("swipe_prime kernel keeps prime harmonics only") {
  const PitchGrid grid = build_pitch_grid();
  const FrequencyGrid freq =
      frequency_grid_for(grid, FrequencyScale::kMelSlaney);
  const std::vector<double> kernel =
      kernel_for(330.0, freq, KernelVariant::kSwipePrime);

  // Positive local maxima at 330 * {1, 2, 3, 5, 7}.
  for (double h : {1.0, 2.0, 3.0, 5.0, 7.0}) {
    const std::size_t i = nearest_grid_index(freq, 330.0 * h);
    CAPTURE(h);
    CHECK(kernel[i] > 0.0);
    const std::size_t lo = i >= 4 ? i - 4 : 0;
    const std::size_t hi = std::min(kernel.size() - 1, i + 4);
    double local_max = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      local_max = std::max(local_max, kernel[j]);
    }
    CHECK(kernel[i] >= 0.8 * local_max);
  }

  // No positive lobe at the removed 4th harmonic.
  const std::size_t i4 = nearest_grid_index(freq, 4.0 * 330.0);
  CHECK(kernel[i4] == doctest::Approx(0.0).epsilon(1e-12));

  // Valley at 1.5 * f_c.
  const std::size_t iv = nearest_grid_index(freq, 1.5 * 330.0);
  CHECK(kernel[iv] < 0.0);
}

TEST_CASE("plain swipe kernel has every harmonic") {
  const PitchGrid grid = build_pitch_grid();
  const FrequencyGrid freq =
      frequency_grid_for(grid, FrequencyScale::kMelSlaney);
  const std::vector<double> kernel =
      kernel_for(330.0, freq, KernelVariant::kSwipe);
  const std::size_t i4 = nearest_grid_index(freq, 4.0 * 330.0);
  CHECK(kernel[i4] > 0.0);
}

TEST_CASE("kernel lobes are even about each harmonic") {
  // Dense linear auxiliary grid spanning harmonics 1 and 2.
  const double f_c = 200.0;
  FrequencyGrid grid;
  grid.scale = FrequencyScale::kMelSlaney;
  grid.f_lo = 0.3 * f_c;
  grid.f_hi = 2.3 * f_c;
  const std::size_t n = 4001;
  grid.freqs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid.freqs[i] = grid.f_lo + (grid.f_hi - grid.f_lo) *
                                    static_cast<double>(i) /
                                    static_cast<double>(n - 1);
  }
  const std::vector<double> kernel =
      kernel_for(f_c, grid, KernelVariant::kSwipePrime);

  for (double harmonic : {1.0, 2.0}) {
    // index of the harmonic center on the linear grid
    const double step = (grid.f_hi - grid.f_lo) / static_cast<double>(n - 1);
    const double center_pos = (harmonic * f_c - grid.f_lo) / step;
    const auto center = static_cast<std::size_t>(std::llround(center_pos));
    REQUIRE(std::abs(center_pos - static_cast<double>(center)) < 1e-6);
    const auto quarter = static_cast<std::size_t>(0.24 * f_c / step);
    for (std::size_t d = 1; d < quarter; d += 7) {
      CAPTURE(harmonic);
      CAPTURE(d);
      CHECK(kernel[center - d] ==
            doctest::Approx(kernel[center + d]).epsilon(1e-6));
    }
  }
}

TEST_CASE("kernel_for rejects candidates with no harmonic support") {
  const PitchGrid grid = build_pitch_grid();
  const FrequencyGrid freq =
      frequency_grid_for(grid, FrequencyScale::kMelSlaney);
  // First lobe onset (0.75 * f_c) beyond the grid ceiling.
  CHECK_THROWS_AS(kernel_for(14000.0, freq, KernelVariant::kSwipePrime),
                  std::invalid_argument);
}

TEST_CASE("ideal window lengths are 8 periods") {
  const KernelBank bank = testutil::make_bank();
  CHECK(bank.ideal_window_s[0] == doctest::Approx(8.0 / 27.5).epsilon(1e-12));
  // 440 Hz sits exactly four octaves above 27.5 Hz.
  const std::size_t i440 = bank.pitch_grid.nearest_bin(440.0);
  CHECK(bank.pitch_grid.candidates[i440] == doctest::Approx(440.0));
  CHECK(bank.ideal_window_s[i440] ==
        doctest::Approx(0.0181818).epsilon(1e-4));
  for (std::size_t c = 1; c < bank.ideal_window_s.size(); ++c) {
    CHECK(bank.ideal_window_s[c] < bank.ideal_window_s[c - 1]);
  }
}

TEST_CASE("self-match dominance at the ideal window") {
  const KernelBank bank = testutil::make_bank();
  const int fs = 44100;
  Rng rng(2024);

  auto best_candidate = [&](std::size_t c) {
    const double f0 = bank.pitch_grid.candidates[c];
    const AudioBuffer buf = testutil::sawtooth_clip(f0, 0.5, fs);
    const auto window = static_cast<std::size_t>(
        std::llround(bank.ideal_window_s[c] * fs));
    const SampledSpectrum spec = windowed_spectrum(
        buf, static_cast<std::int64_t>(buf.samples.size() / 2), window, 16384,
        bank.freq_grid);
    std::size_t best = 0;
    double best_score = -2.0;
    for (std::size_t k = 0; k < bank.pitch_grid.size(); ++k) {
      const double z = score_single_window(spec, bank, k);
      if (z > best_score) {
        best_score = z;
        best = k;
      }
    }
    return best;
  };

  // Exact argmax wherever at least two harmonics fit under the grid
  // ceiling (f_c <= ~4.4 kHz, 90% of the grid).
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = static_cast<std::size_t>(rng.uniform_int(0, 264));
    CAPTURE(trial);
    CAPTURE(bank.pitch_grid.candidates[c]);
    CHECK(best_candidate(c) == c);
  }

  // Above that a "sawtooth" is a single visible harmonic and neighboring
  // scores tie to within ~1e-4; the argmax stays within one bin.
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = static_cast<std::size_t>(rng.uniform_int(265, 294));
    const std::size_t best = best_candidate(c);
    CAPTURE(trial);
    CAPTURE(bank.pitch_grid.candidates[c]);
    CHECK(std::abs(static_cast<long>(best) - static_cast<long>(c)) <= 1);
  }
}

TEST_CASE("prime kernels widen the octave margin") {
  const KernelBank prime = testutil::make_bank(KernelVariant::kSwipePrime);
  const KernelBank plain = testutil::make_bank(KernelVariant::kSwipe);
  ScorerConfig cfg;
  cfg.hop_seconds = 0.02;
  const int fs = 44100;
  Rng rng(99);
  for (int trial = 0; trial < 8; ++trial) {
    // At least one octave above the grid floor, and low enough that the
    // octave-down kernel still reaches its 4th harmonic, where the two
    // variants actually differ.
    const auto c = static_cast<std::size_t>(rng.uniform_int(36, 267));
    const double f0 = prime.pitch_grid.candidates[c];
    const AudioBuffer buf = testutil::sawtooth_clip(f0, 0.4, fs);
    const auto center = static_cast<std::int64_t>(buf.samples.size() / 2);

    const ScoreFrame zp = score_frame(buf, center, prime, cfg);
    const ScoreFrame zs = score_frame(buf, center, plain, cfg);
    const double margin_prime = zp.scores[c] - zp.scores[c - 36];
    const double margin_plain = zs.scores[c] - zs.scores[c - 36];
    CAPTURE(f0);
    CHECK(margin_prime > margin_plain);
  }
}
