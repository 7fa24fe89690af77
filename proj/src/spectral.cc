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

#include "tafrag/spectral.h"

#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace tafrag {
namespace {

constexpr double kPowerEpsilon = 1e-10;

constexpr double kMelLinearSlope = 200.0 / 3.0;  // Hz per Mel below 1 kHz
constexpr double kMelBreakHz = 1000.0;
constexpr double kMelBreak = kMelBreakHz / kMelLinearSlope;  // 15 Mel
const double kMelLogStep = std::log(6.4) / 27.0;

// Reflect index into [0, n) without repeating the edge sample.
Eigen::Index Reflect(Eigen::Index i, Eigen::Index n) {
  if (n == 1) return 0;
  const Eigen::Index period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

Eigen::VectorXd PeriodicHann(int n) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  }
  return w;
}

}  // namespace

void SpectralConfig::Validate(double sample_rate) const {
  if (n_fft <= 0 || (n_fft & (n_fft - 1)) != 0) {
    throw ConfigError("n_fft must be a positive power of two, got " +
                      std::to_string(n_fft));
  }
  if (hop <= 0 || hop > n_fft) {
    throw ConfigError("hop must satisfy 0 < hop <= n_fft, got " +
                      std::to_string(hop));
  }
  if (n_mels <= 0) {
    throw ConfigError("n_mels must be positive, got " +
                      std::to_string(n_mels));
  }
  if (!(f_min >= 0.0) || !(f_min < f_max) || !(f_max <= sample_rate / 2.0)) {
    throw ConfigError("frequency bounds must satisfy 0 <= f_min < f_max <= " +
                      std::to_string(sample_rate / 2.0));
  }
  if (!(floor_db < 0.0)) {
    throw ConfigError("floor_db must be negative");
  }
}

Eigen::MatrixXd StftPower(const AudioBuffer& buffer,
                          const SpectralConfig& config) {
  if (buffer.size() < 1) {
    throw EmptyAudioError("STFT of empty buffer" +
                          (buffer.source_path.empty()
                               ? std::string()
                               : " (" + buffer.source_path + ")"));
  }
  const Eigen::Index len = buffer.size();
  const int n_fft = config.n_fft;
  const Eigen::Index n_frames = len / config.hop + 1;
  const Eigen::Index pad = n_fft / 2;
  const Eigen::VectorXd window = PeriodicHann(n_fft);

  Eigen::MatrixXd power(config.n_bins(), n_frames);
  Eigen::FFT<double> fft;
  std::vector<double> frame(n_fft);
  std::vector<std::complex<double>> spectrum;
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const Eigen::Index start = f * config.hop - pad;
    for (int i = 0; i < n_fft; ++i) {
      frame[i] = buffer.samples[Reflect(start + i, len)] * window[i];
    }
    fft.fwd(spectrum, frame);
    for (int k = 0; k < config.n_bins(); ++k) {
      power(k, f) = std::norm(spectrum[k]);
    }
  }
  return power;
}

double HzToMel(double hz) {
  if (hz < kMelBreakHz) return hz / kMelLinearSlope;
  return kMelBreak + std::log(hz / kMelBreakHz) / kMelLogStep;
}

double MelToHz(double mel) {
  if (mel < kMelBreak) return mel * kMelLinearSlope;
  return kMelBreakHz * std::exp(kMelLogStep * (mel - kMelBreak));
}

Eigen::VectorXd MelBandEdges(const SpectralConfig& config) {
  const double lo = HzToMel(config.f_min);
  const double hi = HzToMel(config.f_max);
  Eigen::VectorXd edges(config.n_mels + 2);
  for (int i = 0; i < config.n_mels + 2; ++i) {
    edges[i] = MelToHz(lo + (hi - lo) * i / (config.n_mels + 1));
  }
  return edges;
}

Eigen::MatrixXd MelFilterbank(double sample_rate,
                              const SpectralConfig& config) {
  config.Validate(sample_rate);
  const Eigen::VectorXd edges = MelBandEdges(config);
  const int n_bins = config.n_bins();
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(config.n_mels, n_bins);
  for (int m = 0; m < config.n_mels; ++m) {
    const double left = edges[m];
    const double center = edges[m + 1];
    const double right = edges[m + 2];
    const double norm = 2.0 / (right - left);
    for (int k = 0; k < n_bins; ++k) {
      const double f = k * sample_rate / config.n_fft;
      const double rising = (f - left) / (center - left);
      const double falling = (right - f) / (right - center);
      weights(m, k) = norm * std::max(0.0, std::min(rising, falling));
    }
    if (!(weights.row(m).maxCoeff() > 0.0)) {
      throw ConfigError("Mel filter " + std::to_string(m) +
                        " covers no FFT bin; n_mels=" +
                        std::to_string(config.n_mels) +
                        " is too large for n_fft=" +
                        std::to_string(config.n_fft));
    }
  }
  return weights;
}

LogMelSpectrogram LogMel(const AudioBuffer& buffer,
                         const SpectralConfig& config) {
  const Eigen::MatrixXd fb = MelFilterbank(buffer.sample_rate, config);
  const Eigen::MatrixXd mel = fb * StftPower(buffer, config);

  LogMelSpectrogram out;
  out.config = config;
  out.sample_rate = buffer.sample_rate;
  if (!(mel.maxCoeff() > kPowerEpsilon)) {
    out.values = Eigen::MatrixXd::Constant(mel.rows(), mel.cols(),
                                           config.floor_db);
    return out;
  }
  Eigen::MatrixXd db =
      10.0 * mel.array().max(kPowerEpsilon).log10().matrix();
  const double ref = db.maxCoeff();
  out.values = (db.array() - ref).max(config.floor_db).matrix();
  return out;
}

SpectralDistance LogMelDistance(const LogMelSpectrogram& a,
                                const LogMelSpectrogram& b) {
  if (!(a.config == b.config) || a.sample_rate != b.sample_rate) {
    throw PreconditionError("log-Mel distance: spectrogram configs differ");
  }
  return SpectralDistanceOf(a.values, b.values);
}

}  // namespace tafrag
