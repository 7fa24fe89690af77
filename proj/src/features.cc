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

#include "tafrag/features.h"

#include <string>

#include "tafrag/errors.h"

namespace tafrag {

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLogMel:
      return "logmel";
    case FeatureKind::kMfcc:
      return "mfcc";
    case FeatureKind::kChroma:
      return "chroma";
  }
  return "unknown";
}

FeatureKind ParseFeatureKind(std::string_view name) {
  if (name == "logmel") return FeatureKind::kLogMel;
  if (name == "mfcc") return FeatureKind::kMfcc;
  if (name == "chroma") return FeatureKind::kChroma;
  throw ArgumentError("unknown feature kind '" + std::string(name) +
                      "' (expected logmel, mfcc or chroma)");
}

FeatureSequence LogMelFeatures(const LogMelSpectrogram& spec) {
  return {spec.values, FeatureKind::kLogMel,
          spec.sample_rate / spec.config.hop};
}

FeatureSequence Mfcc(const LogMelSpectrogram& spec, int n_coeffs) {
  const auto n_mels = static_cast<int>(spec.n_mels());
  if (n_coeffs < 1 || n_coeffs > n_mels) {
    throw ArgumentError("MFCC coefficient count must be in [1, " +
                        std::to_string(n_mels) + "], got " +
                        std::to_string(n_coeffs));
  }
  return {OrthonormalDctMatrix(n_coeffs, n_mels) * spec.values,
          FeatureKind::kMfcc, spec.sample_rate / spec.config.hop};
}

int PitchClass(double hz) {
  const auto semitones_from_a =
      static_cast<long>(std::lround(12.0 * std::log2(hz / 440.0)));
  // A is pitch class 9 when C is 0.
  return static_cast<int>(((semitones_from_a + 9) % 12 + 12) % 12);
}

FeatureSequence Chroma(const AudioBuffer& buffer,
                       const SpectralConfig& config) {
  config.Validate(buffer.sample_rate);
  const Eigen::MatrixXd power = StftPower(buffer, config);

  // Fold bins onto pitch classes once; the projection is then a matmul.
  Eigen::MatrixXd fold = Eigen::MatrixXd::Zero(kChromaBins, power.rows());
  for (Eigen::Index k = 1; k < power.rows(); ++k) {
    const double hz = k * buffer.sample_rate / config.n_fft;
    if (hz < kChromaMinHz) continue;
    fold(PitchClass(hz), k) = 1.0;
  }
  Eigen::MatrixXd chroma = fold * power;
  for (Eigen::Index f = 0; f < chroma.cols(); ++f) {
    const double peak = chroma.col(f).maxCoeff();
    if (peak > 0.0) chroma.col(f) /= peak;
  }
  return {std::move(chroma), FeatureKind::kChroma,
          buffer.sample_rate / config.hop};
}

}  // namespace tafrag
