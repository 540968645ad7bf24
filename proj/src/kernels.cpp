#include "swipe/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swipe {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Harmonic numbers carrying kernel lobes: all of 1..n_max for SWIPE, the
// first plus the primes for SWIPE'.
std::vector<int> active_harmonics(int n_max, KernelVariant variant) {
  std::vector<int> out;
  for (int i = 1; i <= n_max; ++i) {
    if (variant == KernelVariant::kSwipe || i == 1 || is_prime(i)) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

double PitchGrid::bin_of(double f_hz) const {
  return std::log2(f_hz / candidates.front()) * bins_per_octave();
}

std::size_t PitchGrid::nearest_bin(double f_hz) const {
  const double p = bin_of(f_hz);
  const auto i = static_cast<std::int64_t>(std::lround(p));
  return static_cast<std::size_t>(
      std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(size()) - 1));
}

PitchGrid build_pitch_grid(double f_min, double f_max, int bins_per_semitone) {
  if (!(0.0 < f_min && f_min < f_max)) {
    throw std::invalid_argument("build_pitch_grid: need 0 < f_min < f_max");
  }
  if (bins_per_semitone < 1) {
    throw std::invalid_argument("build_pitch_grid: bins_per_semitone >= 1");
  }
  PitchGrid grid;
  grid.f_min = f_min;
  grid.f_max = f_max;
  grid.bins_per_semitone = bins_per_semitone;
  const double per_octave = 12.0 * bins_per_semitone;
  const double limit = f_max * (1.0 + 1e-12);
  for (int i = 0;; ++i) {
    const double f = f_min * std::pow(2.0, static_cast<double>(i) / per_octave);
    if (f > limit) break;
    grid.candidates.push_back(f);
  }
  return grid;
}

FrequencyGrid frequency_grid_for(const PitchGrid& grid, FrequencyScale scale,
                                 std::size_t n) {
  return build_grid(scale, 0.25 * grid.f_min, 1.25 * grid.f_max, n);
}

std::vector<double> kernel_for(double f_c, const FrequencyGrid& freq_grid,
                               KernelVariant variant) {
  if (f_c <= 0.0) throw std::invalid_argument("kernel_for: f_c must be > 0");
  const double grid_max = freq_grid.freqs.back();
  // Highest harmonic whose main lobe (half-width f_c/4) still has support
  // under the grid ceiling. Keeping partially clipped lobes keeps the
  // kernel consistent with what the sampled spectrum can show near the
  // ceiling; dropping them blinds a candidate to harmonic energy that its
  // neighbors still match, which flips argmaxes at the truncation boundary.
  const int n_max =
      static_cast<int>(std::floor(grid_max / f_c + 0.25 - 1e-12));
  if (n_max < 1) {
    throw std::invalid_argument(
        "kernel_for: no harmonic of f_c fits below the frequency grid");
  }
  const std::vector<int> active = active_harmonics(n_max, variant);

  std::vector<double> kernel(freq_grid.freqs.size(), 0.0);
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    const double r = freq_grid.freqs[k] / f_c;
    // Nearest active harmonic (ties resolve to the lower one).
    auto it = std::lower_bound(active.begin(), active.end(), r);
    int nearest;
    if (it == active.end()) {
      nearest = active.back();
    } else if (it == active.begin()) {
      nearest = active.front();
    } else {
      const int above = *it;
      const int below = *(it - 1);
      nearest = (r - below <= above - r) ? below : above;
    }
    const double dist = std::abs(r - nearest);
    double v = 0.0;
    if (dist < 0.25) {
      v = std::cos(2.0 * kPi * r);
    } else if (dist < 0.75) {
      v = 0.5 * std::cos(2.0 * kPi * r);
    }
    kernel[k] = v / std::sqrt(static_cast<double>(nearest));
  }

  double norm = 0.0;
  for (double v : kernel) norm += v * v;
  norm = std::sqrt(norm);
  if (norm <= 0.0) {
    throw std::runtime_error("kernel_for: kernel has no support on the grid");
  }
  for (double& v : kernel) v /= norm;
  return kernel;
}

KernelBank build_kernel_bank(PitchGrid grid, FrequencyGrid freq_grid,
                             KernelVariant variant) {
  KernelBank bank;
  bank.variant = variant;
  const std::size_t n_freq = freq_grid.freqs.size();
  bank.kernels_.resize(grid.size() * n_freq);
  bank.ideal_window_s.resize(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const double f_c = grid.candidates[c];
    const std::vector<double> k = kernel_for(f_c, freq_grid, variant);
    std::copy(k.begin(), k.end(), bank.kernels_.begin() + c * n_freq);
    bank.ideal_window_s[c] = 8.0 / f_c;
  }
  bank.pitch_grid = std::move(grid);
  bank.freq_grid = std::move(freq_grid);
  return bank;
}

}  // namespace swipe
