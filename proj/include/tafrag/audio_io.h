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

#ifndef TAFRAG_AUDIO_IO_H_
#define TAFRAG_AUDIO_IO_H_

#include <string>
#include <utility>

#include <Eigen/Dense>

namespace tafrag {

// Canonical analysis rate. Every input is resampled to it before feature
// extraction so that all tables share one time/frequency grid.
inline constexpr double kAnalysisSampleRate = 32000.0;

// Decoded mono waveform. Samples are nominally in [-1, 1] and always finite.
struct AudioBuffer {
  Eigen::VectorXd samples;
  double sample_rate = 0.0;
  std::string source_path;

  Eigen::Index size() const { return samples.size(); }
  double duration_seconds() const {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate
                             : 0.0;
  }
};

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a RIFF/WAVE file (PCM16 or IEEE float32, one or two channels).
// Stereo is mixed down by equal-weight channel average; PCM16 is scaled by
// 1/32768.
AudioBuffer LoadWav(const std::string& path);

// Writes a mono file. PCM16 samples are clipped to [-1, 1 - 2^-15] and
// rounded to the nearest step.
void WriteWav(const std::string& path, const AudioBuffer& buffer,
              WavEncoding encoding = WavEncoding::kPcm16);

// Writes an interleaved multi-channel file; `channels` is [frames x channels].
void WriteWav(const std::string& path, const Eigen::MatrixXd& channels,
              double sample_rate, WavEncoding encoding = WavEncoding::kPcm16);

// Band-limited (Kaiser-windowed sinc, 64 taps, beta 12) rate conversion.
// Output length is round(n * target / source). Returns the input unchanged
// when the rates already match.
AudioBuffer Resample(const AudioBuffer& buffer, double target_rate);

// Truncates both buffers to the shorter length, keeping the signal start.
std::pair<AudioBuffer, AudioBuffer> AlignPair(const AudioBuffer& a,
                                              const AudioBuffer& b);

// Resample to kAnalysisSampleRate, then AlignPair.
std::pair<AudioBuffer, AudioBuffer> PrepareForComparison(const AudioBuffer& a,
                                                         const AudioBuffer& b);

}  // namespace tafrag

#endif  // TAFRAG_AUDIO_IO_H_
