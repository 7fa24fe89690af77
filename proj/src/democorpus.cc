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

#include "tafrag/democorpus.h"

#include <cmath>
#include <filesystem>
#include <numbers>

#include <Eigen/QR>

#include "tafrag/errors.h"

namespace tafrag {
namespace {

// SplitMix64: tiny, fully specified generator so corpora are identical on
// every platform (std:: distributions are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  int Below(int n) { return static_cast<int>(Next() % static_cast<std::uint64_t>(n)); }

 private:
  std::uint64_t state_;
};

std::string Key(const DemoCorpusOptions& options, const std::string& group_id,
                std::string_view extra = {}) {
  std::string key = options.model + "|" + group_id + "|" +
                    std::to_string(options.seed);
  if (!extra.empty()) {
    key += "|";
    key += extra;
  }
  return key;
}

double MidiToHz(double midi) { return 440.0 * std::exp2((midi - 69.0) / 12.0); }

constexpr int kMajor[] = {0, 4, 7, 12};
constexpr int kMinor[] = {0, 3, 7, 12};
constexpr int kProgressionSteps[] = {0, 3, 5, 7, 8, 10};
constexpr int kPhraseNotes = 16;

}  // namespace

std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

double DefaultCosineCenter(long long seed) {
  static constexpr double kOffsets[] = {0.0, 0.04, -0.03, 0.03, 0.05, -0.01};
  const auto slot = static_cast<std::size_t>(((seed % 6) + 6) % 6);
  return 0.62 + kOffsets[slot];
}

AudioBuffer SynthesizeVariant(const PerturbationGroup& group,
                              std::size_t variant_index,
                              const DemoCorpusOptions& options) {
  if (variant_index >= group.variants.size()) {
    throw ArgumentError("SynthesizeVariant: variant index out of range");
  }
  if (!(options.sample_rate > 0.0) || !(options.duration_s > 0.0)) {
    throw ArgumentError("SynthesizeVariant: rate and duration must be > 0");
  }
  const PromptVariant& variant = group.variants[variant_index];
  SplitMix64 piece(Fnv1a64(Key(options, group.id)));
  SplitMix64 twist(Fnv1a64(Key(options, group.id, variant.id)));

  // Shared phrase for the whole group.
  const int root = 48 + piece.Below(12);
  const int* chord = piece.Below(2) == 0 ? kMajor : kMinor;
  const double notes_per_second = 2.0 + 2.0 * piece.Uniform();
  int progression[4];
  for (int& step : progression) step = kProgressionSteps[piece.Below(6)];
  double midi[kPhraseNotes];
  for (int k = 0; k < kPhraseNotes; ++k) {
    midi[k] = root + progression[k / 4] + chord[piece.Below(4)];
  }

  // Variant perturbation: tempo drift, brightness, sometimes a transposition.
  const double tempo = notes_per_second * (1.0 + 0.1 * (twist.Uniform() - 0.5));
  const int level = variant.level.value_or(1);
  const double brightness = 0.25 + 0.15 * twist.Uniform() + 0.1 * (level - 1);
  const int transpose = twist.Below(4) == 0 ? (twist.Below(2) ? 5 : -7) : 0;
  const double hit_gain = 0.05 + 0.1 * twist.Uniform();

  const auto n = static_cast<Eigen::Index>(
      std::llround(options.duration_s * options.sample_rate));
  AudioBuffer out;
  out.sample_rate = options.sample_rate;
  out.source_path = group.id + "__" + variant.id;
  out.samples.resize(n);
  SplitMix64 noise(Fnv1a64(Key(options, group.id, variant.id + "|noise")));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / options.sample_rate;
    const double position = t * tempo;
    const auto note = static_cast<int>(position);
    const double since_onset = (position - note) / tempo;
    const double f0 = MidiToHz(midi[note % kPhraseNotes] + transpose);
    const double envelope =
        std::min(1.0, since_onset * 200.0) * std::exp(-3.0 * since_onset);
    double tone = 0.0;
    double weight = 1.0;
    for (int h = 1; h <= 4; ++h) {
      tone += weight * std::sin(2.0 * std::numbers::pi * f0 * h * t);
      weight *= brightness;
    }
    const double hit =
        hit_gain * (2.0 * noise.Uniform() - 1.0) * std::exp(-60.0 * since_onset);
    out.samples[i] = 0.3 * envelope * tone + hit;
  }
  const double peak = out.samples.cwiseAbs().maxCoeff();
  if (peak > 0.0) out.samples *= 0.5 / peak;
  return out;
}

double GroupTargetCosine(const PerturbationGroup& group,
                         const DemoCorpusOptions& options) {
  // The offset ignores the seed so per-seed means differ only by the center.
  SplitMix64 rng(Fnv1a64(options.model + "|" + group.id + "|offset"));
  const double c = options.cosine_center + 0.2 * (rng.Uniform() - 0.5);
  return std::clamp(c, 0.05, 0.99);
}

std::vector<EmbeddingVector> SynthesizeGroupEmbeddings(
    const PerturbationGroup& group, const DemoCorpusOptions& options) {
  const int k = static_cast<int>(group.variants.size());
  const int d = options.embedding_dim;
  if (d < k + 1) {
    throw ArgumentError("embedding_dim must exceed the variant count");
  }
  SplitMix64 rng(Fnv1a64(Key(options, group.id, "embedding")));
  Eigen::MatrixXd basis(d, k + 1);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      basis(r, c) = 2.0 * rng.Uniform() - 1.0;
    }
  }
  const Eigen::MatrixXd q =
      Eigen::HouseholderQR<Eigen::MatrixXd>(basis).householderQ() *
      Eigen::MatrixXd::Identity(d, k + 1);

  // z_v = u + s w_v with u, w_v orthonormal gives cos(z_a, z_b) = 1/(1+s^2).
  const double target = GroupTargetCosine(group, options);
  const double spread = std::sqrt(1.0 / target - 1.0);
  std::vector<EmbeddingVector> out;
  for (int v = 0; v < k; ++v) {
    EmbeddingVector e;
    e.values = q.col(0) + spread * q.col(v + 1);
    e.values.normalize();
    e.normalized = true;
    e.source = "tafrag-demo-encoder/1";
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t WriteDemoCorpus(const std::vector<PerturbationGroup>& groups,
                            const std::string& root,
                            const DemoCorpusOptions& options) {
  std::size_t written = 0;
  const std::filesystem::path dir = std::filesystem::path(root) /
                                    options.model /
                                    std::to_string(options.seed);
  std::filesystem::create_directories(dir);
  for (const PerturbationGroup& group : groups) {
    const std::vector<EmbeddingVector> embeddings =
        SynthesizeGroupEmbeddings(group, options);
    for (std::size_t v = 0; v < group.variants.size(); ++v) {
      const std::string wav = CorpusWavPath(root, options.model, options.seed,
                                            group.id, group.variants[v].id);
      WriteWav(wav, SynthesizeVariant(group, v, options), WavEncoding::kPcm16);
      WriteEmbedding(SidecarPathFor(wav), embeddings[v]);
      ++written;
    }
  }
  return written;
}

}  // namespace tafrag
