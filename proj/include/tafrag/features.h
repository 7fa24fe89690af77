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

#ifndef TAFRAG_FEATURES_H_
#define TAFRAG_FEATURES_H_

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "tafrag/audio_io.h"
#include "tafrag/spectral.h"

namespace tafrag {

enum class FeatureKind { kLogMel, kMfcc, kChroma };

std::string_view FeatureKindName(FeatureKind kind);
// Throws ArgumentError for anything but "logmel", "mfcc" or "chroma".
FeatureKind ParseFeatureKind(std::string_view name);

inline constexpr int kDefaultMfccCoefficients = 13;
inline constexpr int kChromaBins = 12;
// Bins below this frequency do not contribute to chroma.
inline constexpr double kChromaMinHz = 55.0;

// Column-per-frame feature matrix [dim x n_frames].
struct FeatureSequence {
  Eigen::MatrixXd frames;
  FeatureKind kind = FeatureKind::kLogMel;
  double frame_rate = 0.0;

  Eigen::Index dim() const { return frames.rows(); }
  Eigen::Index n_frames() const { return frames.cols(); }
};

// Rows of the orthonormal DCT-II basis: [n_coeffs x n].
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> OrthonormalDctMatrix(
    int n_coeffs, int n) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis(n_coeffs, n);
  for (int k = 0; k < n_coeffs; ++k) {
    const Scalar scale = std::sqrt(Scalar(k == 0 ? 1 : 2) / Scalar(n));
    for (int i = 0; i < n; ++i) {
      basis(k, i) = scale * std::cos(Scalar(std::numbers::pi) * k *
                                     (Scalar(2 * i + 1)) / Scalar(2 * n));
    }
  }
  return basis;
}

FeatureSequence LogMelFeatures(const LogMelSpectrogram& spec);

// Per-frame orthonormal DCT-II of the log-Mel column, keeping the first
// n_coeffs coefficients (c0 included).
FeatureSequence Mfcc(const LogMelSpectrogram& spec,
                     int n_coeffs = kDefaultMfccCoefficients);

// Pitch class (C = 0 ... B = 11) of a frequency under A440 equal temperament.
int PitchClass(double hz);

// 12-bin chroma from STFT power; every column is scaled so its peak is 1
// (silent columns stay zero).
FeatureSequence Chroma(const AudioBuffer& buffer,
                       const SpectralConfig& config = {});

}  // namespace tafrag

#endif  // TAFRAG_FEATURES_H_
