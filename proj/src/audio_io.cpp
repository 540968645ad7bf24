#include "swipe/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "swipe/rng.hpp"

namespace swipe {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] |
                                    (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const std::size_t size = data.size();

  if (size < 12 || std::memcmp(bytes, "RIFF", 4) != 0 ||
      std::memcmp(bytes + 8, "WAVE", 4) != 0) {
    fail(path, "malformed header: not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  const unsigned char* pcm = nullptr;
  std::size_t pcm_size = 0;

  std::size_t off = 12;
  while (off + 8 <= size) {
    const char* id = data.data() + off;
    const std::uint32_t chunk_size = read_u32(bytes + off + 4);
    off += 8;
    if (off + chunk_size > size) {
      fail(path, std::string("malformed header: truncated '") +
                     std::string(id, 4) + "' chunk");
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_size < 16) fail(path, "malformed header: short fmt chunk");
      format = read_u16(bytes + off);
      channels = read_u16(bytes + off + 2);
      sample_rate = read_u32(bytes + off + 4);
      block_align = read_u16(bytes + off + 12);
      bits = read_u16(bytes + off + 14);
      if (format == 0xFFFE && chunk_size >= 40) {
        // WAVE_FORMAT_EXTENSIBLE: the codec lives in the SubFormat GUID.
        format = read_u16(bytes + off + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      pcm = bytes + off;
      pcm_size = chunk_size;
    }
    off += chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) fail(path, "malformed header: missing fmt chunk");
  if (!pcm) fail(path, "malformed header: missing data chunk");
  if (channels == 0 || sample_rate == 0) {
    fail(path, "malformed header: zero channels or sample rate");
  }

  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32) {
    std::ostringstream msg;
    msg << "unsupported codec: format tag " << format << " at " << bits
        << " bits (supported: PCM 16-bit, IEEE float 32-bit)";
    fail(path, msg.str());
  }
  const std::size_t bytes_per_sample = bits / 8;
  if (block_align != bytes_per_sample * channels) {
    fail(path, "malformed header: block align mismatch");
  }

  const std::size_t n_frames = pcm_size / block_align;
  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(sample_rate);
  buf.samples.resize(n_frames);
  const double chan_scale = 1.0 / channels;
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    const unsigned char* frame = pcm + i * block_align;
    for (std::uint16_t c = 0; c < channels; ++c) {
      const unsigned char* s = frame + c * bytes_per_sample;
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, s, 2);
        acc += static_cast<double>(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, s, 4);
        acc += static_cast<double>(v);
      }
    }
    buf.samples[i] = acc * chan_scale;
  }
  return buf;
}

void write_wav(const std::string& path, const AudioBuffer& buf) {
  if (buf.sample_rate <= 0) {
    throw std::invalid_argument("write_wav: invalid sample rate");
  }
  const auto n = static_cast<std::uint32_t>(buf.samples.size());
  std::string out;
  out.reserve(60 + 4 * n);
  out += "RIFF";
  put_u32(out, 4 + 26 + 12 + 8 + 4 * n);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 18);
  put_u16(out, 3);  // IEEE float
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate) * 4);
  put_u16(out, 4);
  put_u16(out, 32);
  put_u16(out, 0);  // no fmt extension
  out += "fact";
  put_u32(out, 4);
  put_u32(out, n);
  out += "data";
  put_u32(out, 4 * n);
  for (double s : buf.samples) {
    const float v = static_cast<float>(s);
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(path, "cannot open file for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) fail(path, "write failed");
}

SynthResult synth_signal(Waveform kind, const std::vector<double>& f0_curve,
                         double hop_seconds, int sample_rate,
                         double amplitude) {
  if (f0_curve.empty()) {
    throw std::invalid_argument("synth_signal: empty f0 curve");
  }
  if (hop_seconds <= 0.0 || sample_rate <= 0) {
    throw std::invalid_argument("synth_signal: invalid hop or sample rate");
  }
  const double nyquist = 0.5 * sample_rate;
  for (double f : f0_curve) {
    if (!(f > 0.0) || f >= nyquist) {
      throw std::invalid_argument(
          "synth_signal: f0 values must lie in (0, sample_rate/2)");
    }
  }

  const auto n_samples = static_cast<std::size_t>(
      std::llround(static_cast<double>(f0_curve.size()) * hop_seconds *
                   sample_rate));
  AudioBuffer buf;
  buf.sample_rate = sample_rate;
  buf.samples.resize(n_samples);

  const double dt = 1.0 / sample_rate;
  double phase = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) * dt;
    // Instantaneous frequency: linear interpolation of the hop-rate curve.
    const double u = t / hop_seconds;
    const auto i0 = static_cast<std::size_t>(u);
    double f;
    if (i0 + 1 >= f0_curve.size()) {
      f = f0_curve.back();
    } else {
      const double frac = u - static_cast<double>(i0);
      f = f0_curve[i0] + (f0_curve[i0 + 1] - f0_curve[i0]) * frac;
    }

    if (kind == Waveform::kSine) {
      buf.samples[i] = amplitude * std::sin(phase);
    } else {
      // Band-limited additive sawtooth: harmonic k at amplitude (2/pi)/k,
      // summed with a complex rotator so the cost per sample is O(K) mults.
      const int n_harm = static_cast<int>(std::ceil(nyquist / f)) - 1;
      const double c = std::cos(phase);
      const double s = std::sin(phase);
      double zr = c, zi = s;
      double acc = s;  // k = 1
      for (int k = 2; k <= n_harm; ++k) {
        const double nr = zr * c - zi * s;
        const double ni = zr * s + zi * c;
        zr = nr;
        zi = ni;
        acc += zi / k;
      }
      buf.samples[i] = amplitude * (2.0 / kPi) * acc;
    }

    phase += 2.0 * kPi * f * dt;
    if (phase > 2.0 * kPi) phase -= 2.0 * kPi;
  }

  SynthResult out;
  out.audio = std::move(buf);
  out.annotation.hop_seconds = hop_seconds;
  out.annotation.f0 = f0_curve;
  return out;
}

AudioBuffer add_noise(const AudioBuffer& buf, double snr_db,
                      std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return buf;
  double power = 0.0;
  for (double s : buf.samples) power += s * s;
  if (buf.samples.empty() || power <= 0.0) {
    throw std::runtime_error("add_noise: silent input, SNR undefined");
  }
  power /= static_cast<double>(buf.samples.size());
  const double noise_power = power * std::pow(10.0, -snr_db / 10.0);
  const double sigma = std::sqrt(noise_power);
  Rng rng(seed);
  AudioBuffer out = buf;
  for (double& s : out.samples) s += sigma * rng.gaussian();
  return out;
}

namespace {

constexpr int kSincHalfWidth = 48;
constexpr int kSincTableStep = 1024;  // kernel samples per unit tau

// Blackman-windowed sinc tabulated on a fine grid; entries at integer tau
// are exact so a ratio of 1 reproduces the input bit-for-bit.
struct SincTable {
  double cutoff = -1.0;
  std::vector<double> values;  // h(tau) for tau = i / kSincTableStep

  void build(double c) {
    cutoff = c;
    const std::size_t n =
        static_cast<std::size_t>(kSincHalfWidth) * kSincTableStep + 1;
    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double tau = static_cast<double>(i) / kSincTableStep;
      const double x = tau / kSincHalfWidth;
      const double w =
          0.42 + 0.5 * std::cos(kPi * x) + 0.08 * std::cos(2.0 * kPi * x);
      values[i] = c * sinc(c * tau) * w;
    }
  }

  double operator()(double tau) const {
    const double a = std::abs(tau) * kSincTableStep;
    const auto i = static_cast<std::size_t>(a);
    if (i + 1 >= values.size()) return 0.0;
    const double frac = a - static_cast<double>(i);
    return values[i] + (values[i + 1] - values[i]) * frac;
  }
};

const SincTable& sinc_table_for(double cutoff) {
  thread_local std::vector<SincTable> cache;
  for (const SincTable& t : cache) {
    if (t.cutoff == cutoff) return t;
  }
  cache.emplace_back();
  cache.back().build(cutoff);
  return cache.back();
}

}  // namespace

AudioBuffer resample_shift(const AudioBuffer& buf, double semitones) {
  if (std::abs(semitones) > 24.0) {
    throw std::invalid_argument("resample_shift: |semitones| must be <= 24");
  }
  const double ratio = std::pow(2.0, semitones / 12.0);
  const auto in_len = static_cast<std::int64_t>(buf.samples.size());
  const auto out_len = std::max<std::int64_t>(
      1, std::llround(static_cast<double>(in_len) / ratio));

  // Anti-aliasing cutoff for upward shifts (spectrum compression).
  const double cutoff = std::min(1.0, 1.0 / ratio);
  const SincTable& kernel = sinc_table_for(cutoff);

  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.resize(static_cast<std::size_t>(out_len));
  for (std::int64_t n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) * ratio;
    const auto i0 = static_cast<std::int64_t>(std::floor(t));
    const double frac = t - static_cast<double>(i0);
    const std::int64_t lo =
        std::max<std::int64_t>(i0 - kSincHalfWidth + 1, 0);
    const std::int64_t hi = std::min(i0 + kSincHalfWidth, in_len - 1);
    double acc = 0.0;
    for (std::int64_t idx = lo; idx <= hi; ++idx) {
      const double tau = static_cast<double>(idx - i0) - frac;
      acc += buf.samples[static_cast<std::size_t>(idx)] * kernel(tau);
    }
    out.samples[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

namespace {

// Parses whitespace/comma-separated numeric rows; one non-numeric header
// row is tolerated. Returns one vector per row.
std::vector<std::vector<double>> parse_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> tokens;
    std::string token;
    for (char ch : line) {
      if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
        if (!token.empty()) tokens.push_back(std::move(token));
        token.clear();
      } else {
        token.push_back(ch);
      }
    }
    if (!token.empty()) tokens.push_back(std::move(token));
    if (tokens.empty()) continue;

    std::vector<double> row;
    bool numeric = true;
    for (const std::string& tok : tokens) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end != tok.c_str() + tok.size()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;  // header row
      std::ostringstream msg;
      msg << "non-numeric token on line " << line_no;
      fail(path, msg.str());
    }
    if (row.size() < 2) {
      std::ostringstream msg;
      msg << "expected at least two columns on line " << line_no;
      fail(path, msg.str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double infer_hop(const std::string& path,
                 const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) {
    fail(path, rows.empty() ? "empty file"
                            : "need at least two rows to infer the hop");
  }
  const double hop = rows[1][0] - rows[0][0];
  if (hop <= 0.0) fail(path, "timestamps must be strictly increasing");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double dt = rows[i][0] - rows[i - 1][0];
    if (std::abs(dt - hop) > 0.01 * hop) {
      std::ostringstream msg;
      msg << "non-uniform timestamps near row " << i + 1 << " (step " << dt
          << " vs hop " << hop << ")";
      fail(path, msg.str());
    }
  }
  return hop;
}

}  // namespace

Annotation read_annotation(const std::string& path) {
  const auto rows = parse_rows(path);
  Annotation ann;
  ann.hop_seconds = infer_hop(path, rows);
  ann.f0.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double f0 = rows[i][1];
    if (f0 < 0.0 || !std::isfinite(f0)) {
      std::ostringstream msg;
      msg << "invalid f0 on line " << i + 1;
      fail(path, msg.str());
    }
    ann.f0.push_back(f0);
  }
  return ann;
}

void write_annotation(const std::string& path, const Annotation& annotation) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open file for writing");
  char line[64];
  for (std::size_t i = 0; i < annotation.f0.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.6f %.6f\n",
                  static_cast<double>(i) * annotation.hop_seconds,
                  annotation.f0[i]);
    out << line;
  }
  if (!out) fail(path, "write failed");
}

void write_track(const std::string& path, const PitchTrack& track) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open file for writing");
  out << "time,f0,confidence,voiced\n";
  char line[128];
  for (std::size_t i = 0; i < track.frames.size(); ++i) {
    const PitchFrame& f = track.frames[i];
    std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f,%d\n",
                  static_cast<double>(i) * track.hop_seconds, f.f0_hz,
                  f.confidence, f.voiced ? 1 : 0);
    out << line;
  }
  if (!out) fail(path, "write failed");
}

PitchTrack read_track(const std::string& path) {
  const auto rows = parse_rows(path);
  PitchTrack track;
  track.hop_seconds = infer_hop(path, rows);
  track.frames.reserve(rows.size());
  for (const auto& row : rows) {
    PitchFrame frame;
    frame.f0_hz = row[1];
    frame.confidence = row.size() > 2 ? row[2] : (row[1] > 0.0 ? 1.0 : 0.0);
    frame.voiced = row.size() > 3 ? row[3] != 0.0 : row[1] > 0.0;
    track.frames.push_back(frame);
  }
  return track;
}

}  // namespace swipe
