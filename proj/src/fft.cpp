#include "swipe/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace swipe::fft {

namespace {

// FFTW plan creation is not thread-safe; execution with the new-array
// interface is. Plans are cached per size, buffers per thread and size.
std::mutex g_plan_mutex;

struct Buffers {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  std::size_t n = 0;

  ~Buffers() {
    if (real) fftw_free(real);
    if (cplx) fftw_free(cplx);
  }

  void ensure(std::size_t size) {
    if (n == size) return;
    if (real) fftw_free(real);
    if (cplx) fftw_free(cplx);
    real = fftw_alloc_real(size);
    cplx = fftw_alloc_complex(size / 2 + 1);
    n = size;
  }
};

fftw_plan forward_plan(std::size_t n, Buffers& buf) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.real, buf.cplx,
                                     FFTW_ESTIMATE);
  plans.emplace(n, p);
  return p;
}

fftw_plan inverse_plan(std::size_t n, Buffers& buf) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n), buf.cplx, buf.real,
                                     FFTW_ESTIMATE);
  plans.emplace(n, p);
  return p;
}

Buffers& thread_buffers(std::size_t n) {
  thread_local std::map<std::size_t, Buffers> bufs;
  Buffers& b = bufs[n];
  b.ensure(n);
  return b;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x,
                                       std::size_t n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("rfft: length must be a power of two");
  }
  Buffers& buf = thread_buffers(n);
  fftw_plan plan = forward_plan(n, buf);
  const std::size_t copy = std::min(x.size(), n);
  std::memcpy(buf.real, x.data(), copy * sizeof(double));
  std::memset(buf.real + copy, 0, (n - copy) * sizeof(double));
  fftw_execute_dft_r2c(plan, buf.real, buf.cplx);
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = {buf.cplx[k][0], buf.cplx[k][1]};
  }
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> bins,
                          std::size_t n) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("irfft: length must be a power of two");
  }
  if (bins.size() != n / 2 + 1) {
    throw std::invalid_argument("irfft: expected n/2 + 1 bins");
  }
  Buffers& buf = thread_buffers(n);
  fftw_plan plan = inverse_plan(n, buf);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    buf.cplx[k][0] = bins[k].real();
    buf.cplx[k][1] = bins[k].imag();
  }
  fftw_execute_dft_c2r(plan, buf.cplx, buf.real);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf.real[i] * scale;
  return out;
}

}  // namespace swipe::fft
