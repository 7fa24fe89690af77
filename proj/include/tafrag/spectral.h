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

#ifndef TAFRAG_SPECTRAL_H_
#define TAFRAG_SPECTRAL_H_

#include <cmath>

#include <Eigen/Dense>

#include "tafrag/audio_io.h"
#include "tafrag/errors.h"

namespace tafrag {

struct SpectralConfig {
  int n_fft = 2048;
  int hop = 512;
  int n_mels = 128;
  double f_min = 0.0;
  double f_max = 16000.0;
  double floor_db = -80.0;

  int n_bins() const { return n_fft / 2 + 1; }

  // Throws ConfigError unless 0 < hop <= n_fft, n_fft is a power of two,
  // 0 <= f_min < f_max <= sample_rate / 2 and floor_db < 0.
  void Validate(double sample_rate) const;

  bool operator==(const SpectralConfig&) const = default;
};

// Log-power Mel spectrogram, [n_mels x n_frames], in dB relative to the
// spectrogram's own maximum. Entries lie in [floor_db, 0].
struct LogMelSpectrogram {
  Eigen::MatrixXd values;
  SpectralConfig config;
  double sample_rate = 0.0;

  Eigen::Index n_mels() const { return values.rows(); }
  Eigen::Index n_frames() const { return values.cols(); }
};

// Power spectrogram [n_fft/2+1 x n_frames] of Hann-windowed frames. The
// signal is reflect-padded by n_fft/2 on both sides, giving
// floor(len / hop) + 1 frames.
Eigen::MatrixXd StftPower(const AudioBuffer& buffer,
                          const SpectralConfig& config);

// Slaney Mel scale: linear below 1 kHz, logarithmic above.
double HzToMel(double hz);
double MelToHz(double mel);

// n_mels + 2 band edges equally spaced in Mel between f_min and f_max;
// filter i spans edges [i, i+2] and peaks at edge i+1.
Eigen::VectorXd MelBandEdges(const SpectralConfig& config);

// Area-normalized triangular filterbank [n_mels x n_fft/2+1].
Eigen::MatrixXd MelFilterbank(double sample_rate, const SpectralConfig& config);

LogMelSpectrogram LogMel(const AudioBuffer& buffer,
                         const SpectralConfig& config = {});

struct SpectralDistance {
  double l1 = 0.0;
  double rmse = 0.0;
};

// Element-mean absolute difference and root-mean-square difference.
template <typename DerivedA, typename DerivedB>
SpectralDistance SpectralDistanceOf(const Eigen::MatrixBase<DerivedA>& a,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw PreconditionError("spectral distance: shape mismatch");
  }
  if (a.size() == 0) {
    throw PreconditionError("spectral distance: empty spectrograms");
  }
  const auto diff = (a.template cast<double>() - b.template cast<double>())
                        .array()
                        .eval();
  const double n = static_cast<double>(diff.size());
  return {diff.abs().sum() / n, std::sqrt(diff.square().sum() / n)};
}

SpectralDistance LogMelDistance(const LogMelSpectrogram& a,
                                const LogMelSpectrogram& b);

}  // namespace tafrag

#endif  // TAFRAG_SPECTRAL_H_
