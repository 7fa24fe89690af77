// Copyright 2026 The tafrag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tafrag/audio_io.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <vector>

#include "tafrag/errors.h"

namespace tafrag {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

constexpr int kResampleTaps = 64;
constexpr int kResampleHalfTaps = kResampleTaps / 2;
constexpr double kKaiserBeta = 12.0;

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void PutU32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
  }
}

void PutTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

float DecodeFloat32(const unsigned char* p) {
  std::uint32_t bits = ReadU32(p);
  float value;
  std::memcpy(&value, &bits, sizeof(value));
  return value;
}

struct WavFormat {
  std::uint16_t format_tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits_per_sample = 0;
};

WavFormat ParseFormatChunk(const unsigned char* p, std::uint32_t size,
                           const std::string& path) {
  if (size < 16) {
    throw FormatError(path + ": fmt chunk too short (" + std::to_string(size) +
                      " bytes)");
  }
  WavFormat fmt;
  fmt.format_tag = ReadU16(p);
  fmt.channels = ReadU16(p + 2);
  fmt.sample_rate = ReadU32(p + 4);
  fmt.block_align = ReadU16(p + 12);
  fmt.bits_per_sample = ReadU16(p + 14);
  if (fmt.format_tag == kFormatExtensible) {
    if (size < 40) {
      throw FormatError(path + ": extensible fmt chunk too short");
    }
    // The first two bytes of the sub-format GUID carry the plain format tag.
    fmt.format_tag = ReadU16(p + 24);
  }
  if (fmt.format_tag != kFormatPcm && fmt.format_tag != kFormatFloat) {
    throw FormatError(path + ": unsupported format_tag " +
                      std::to_string(fmt.format_tag));
  }
  if (fmt.format_tag == kFormatPcm && fmt.bits_per_sample != 16) {
    throw FormatError(path + ": unsupported bits_per_sample " +
                      std::to_string(fmt.bits_per_sample) + " for PCM");
  }
  if (fmt.format_tag == kFormatFloat && fmt.bits_per_sample != 32) {
    throw FormatError(path + ": unsupported bits_per_sample " +
                      std::to_string(fmt.bits_per_sample) + " for float");
  }
  if (fmt.channels != 1 && fmt.channels != 2) {
    throw FormatError(path + ": unsupported channels " +
                      std::to_string(fmt.channels));
  }
  if (fmt.sample_rate == 0) {
    throw FormatError(path + ": sample_rate is 0");
  }
  if (fmt.block_align != fmt.channels * fmt.bits_per_sample / 8) {
    throw FormatError(path + ": inconsistent block_align " +
                      std::to_string(fmt.block_align));
  }
  return fmt;
}

double KaiserWindow(double x) {
  if (std::abs(x) > 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - x * x)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Kernel taps for an output instant at fractional offset `frac` in [0, 1)
// past input index floor(t). Tap k covers input index floor(t) - 31 + k.
std::array<double, kResampleTaps> KernelTaps(double frac, double cutoff) {
  std::array<double, kResampleTaps> taps{};
  double sum = 0.0;
  for (int k = 0; k < kResampleTaps; ++k) {
    const double d = frac + (kResampleHalfTaps - 1) - k;
    taps[k] = cutoff * Sinc(cutoff * d) *
              KaiserWindow(d / static_cast<double>(kResampleHalfTaps));
    sum += taps[k];
  }
  // Unit DC gain at every phase.
  if (sum != 0.0) {
    for (double& t : taps) t /= sum;
  }
  return taps;
}

double ApplyTaps(const Eigen::VectorXd& x, std::int64_t base,
                 const std::array<double, kResampleTaps>& taps) {
  const std::int64_t n = x.size();
  double acc = 0.0;
  for (int k = 0; k < kResampleTaps; ++k) {
    const std::int64_t j = base - (kResampleHalfTaps - 1) + k;
    if (j >= 0 && j < n) acc += taps[k] * x[j];
  }
  return acc;
}

}  // namespace

AudioBuffer LoadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12) throw IoError(path + ": truncated RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0) {
    throw FormatError(path + ": missing RIFF tag");
  }
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw FormatError(path + ": RIFF form type is not WAVE");
  }

  std::size_t pos = 12;
  bool have_format = false;
  WavFormat fmt;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;
  bool have_data = false;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* header = bytes.data() + pos;
    const std::uint32_t chunk_size = ReadU32(header + 4);
    pos += 8;
    if (chunk_size > bytes.size() - pos) {
      throw IoError(path + ": truncated chunk '" +
                    std::string(reinterpret_cast<const char*>(header), 4) +
                    "'");
    }
    if (std::memcmp(header, "fmt ", 4) == 0) {
      fmt = ParseFormatChunk(bytes.data() + pos, chunk_size, path);
      have_format = true;
    } else if (std::memcmp(header, "data", 4) == 0) {
      data = bytes.data() + pos;
      data_size = chunk_size;
      have_data = true;
      break;
    }
    pos += chunk_size + (chunk_size & 1u);
  }
  if (!have_format) throw FormatError(path + ": missing fmt chunk");
  if (!have_data) throw IoError(path + ": missing data chunk");
  if (data_size == 0) throw EmptyAudioError(path + ": data chunk is empty");
  if (data_size % fmt.block_align != 0) {
    throw IoError(path + ": data chunk ends mid-frame");
  }

  const Eigen::Index frames = data_size / fmt.block_align;
  const int bytes_per_sample = fmt.bits_per_sample / 8;
  AudioBuffer out;
  out.sample_rate = fmt.sample_rate;
  out.source_path = path;
  out.samples.resize(frames);
  for (Eigen::Index f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (int c = 0; c < fmt.channels; ++c) {
      const unsigned char* p =
          data + f * fmt.block_align + c * bytes_per_sample;
      double v;
      if (fmt.format_tag == kFormatPcm) {
        v = static_cast<std::int16_t>(ReadU16(p)) / 32768.0;
      } else {
        v = DecodeFloat32(p);
        if (!std::isfinite(v)) {
          throw FormatError(path + ": non-finite sample at frame " +
                            std::to_string(f));
        }
      }
      acc += v;
    }
    out.samples[f] = acc / fmt.channels;
  }
  return out;
}

void WriteWav(const std::string& path, const Eigen::MatrixXd& channels,
              double sample_rate, WavEncoding encoding) {
  if (channels.cols() < 1 || channels.cols() > 2) {
    throw ArgumentError("WriteWav: channel count must be 1 or 2");
  }
  if (!(sample_rate > 0.0) || sample_rate != std::floor(sample_rate)) {
    throw ArgumentError("WriteWav: sample rate must be a positive integer");
  }
  const auto n_channels = static_cast<std::uint16_t>(channels.cols());
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t block_align = n_channels * bits / 8;
  const auto data_size =
      static_cast<std::uint32_t>(channels.rows() * block_align);

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  PutU16(out, n_channels);
  PutU32(out, static_cast<std::uint32_t>(sample_rate));
  PutU32(out, static_cast<std::uint32_t>(sample_rate) * block_align);
  PutU16(out, block_align);
  PutU16(out, bits);
  PutTag(out, "data");
  PutU32(out, data_size);
  for (Eigen::Index f = 0; f < channels.rows(); ++f) {
    for (Eigen::Index c = 0; c < channels.cols(); ++c) {
      const double v = channels(f, c);
      if (encoding == WavEncoding::kPcm16) {
        const double scaled =
            std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
        PutU16(out, static_cast<std::uint16_t>(
                        static_cast<std::int16_t>(scaled)));
      } else {
        const auto f32 = static_cast<float>(v);
        std::uint32_t bits32;
        std::memcpy(&bits32, &f32, sizeof(bits32));
        PutU32(out, bits32);
      }
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(path + ": cannot open for writing");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError(path + ": write failed");
}

void WriteWav(const std::string& path, const AudioBuffer& buffer,
              WavEncoding encoding) {
  WriteWav(path, Eigen::MatrixXd(buffer.samples), buffer.sample_rate,
           encoding);
}

AudioBuffer Resample(const AudioBuffer& buffer, double target_rate) {
  if (!(target_rate > 0.0) || !std::isfinite(target_rate)) {
    throw ArgumentError("Resample: target rate must be positive, got " +
                        std::to_string(target_rate));
  }
  if (!(buffer.sample_rate > 0.0)) {
    throw PreconditionError("Resample: source sample rate must be positive");
  }
  if (target_rate == buffer.sample_rate) return buffer;

  const double ratio = target_rate / buffer.sample_rate;
  const auto out_len = static_cast<Eigen::Index>(
      std::llround(static_cast<double>(buffer.size()) * ratio));
  const double cutoff = std::min(1.0, ratio);

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.source_path = buffer.source_path;
  out.samples.resize(out_len);

  const bool integral = target_rate == std::floor(target_rate) &&
                        buffer.sample_rate == std::floor(buffer.sample_rate);
  if (integral) {
    // Rational ratio L/M: output k sits at input position k*M/L, so the
    // fractional phase cycles through at most L distinct kernels.
    const auto src = static_cast<std::int64_t>(buffer.sample_rate);
    const auto dst = static_cast<std::int64_t>(target_rate);
    const std::int64_t g = std::gcd(src, dst);
    const std::int64_t up = dst / g;
    const std::int64_t down = src / g;
    if (up <= 8192) {
      std::vector<std::array<double, kResampleTaps>> phases(up);
      for (std::int64_t p = 0; p < up; ++p) {
        phases[p] = KernelTaps(static_cast<double>(p) / up, cutoff);
      }
      for (Eigen::Index k = 0; k < out_len; ++k) {
        const std::int64_t num = k * down;
        out.samples[k] = ApplyTaps(buffer.samples, num / up, phases[num % up]);
      }
      return out;
    }
  }
  for (Eigen::Index k = 0; k < out_len; ++k) {
    const double t = static_cast<double>(k) / ratio;
    const double base = std::floor(t);
    out.samples[k] =
        ApplyTaps(buffer.samples, static_cast<std::int64_t>(base),
                  KernelTaps(t - base, cutoff));
  }
  return out;
}

std::pair<AudioBuffer, AudioBuffer> AlignPair(const AudioBuffer& a,
                                              const AudioBuffer& b) {
  if (a.sample_rate != b.sample_rate) {
    throw PreconditionError("AlignPair: sample rates differ (" +
                            std::to_string(a.sample_rate) + " vs " +
                            std::to_string(b.sample_rate) + ")");
  }
  const Eigen::Index n = std::min(a.size(), b.size());
  AudioBuffer out_a = a;
  AudioBuffer out_b = b;
  out_a.samples.conservativeResize(n);
  out_b.samples.conservativeResize(n);
  return {std::move(out_a), std::move(out_b)};
}

std::pair<AudioBuffer, AudioBuffer> PrepareForComparison(const AudioBuffer& a,
                                                         const AudioBuffer& b) {
  return AlignPair(Resample(a, kAnalysisSampleRate),
                   Resample(b, kAnalysisSampleRate));
}

}  // namespace tafrag
