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

#ifndef TAFRAG_CLI_H_
#define TAFRAG_CLI_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tafrag/errors.h"
#include "tafrag/report.h"
#include "tafrag/spectral.h"
#include "tafrag/stats.h"

namespace tafrag {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitValidation = 3;

int ExitCodeFor(const Error& error);

struct RunConfig {
  std::string manifest_path;
  std::string audio_root;
  std::vector<std::string> models;
  std::vector<long long> seeds = {0};
  SpectralConfig spectral;
  std::string out_dir;
  bool strict_embeddings = false;
  std::optional<int> dtw_band;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;

  // Throws ValidationError / ConfigError on an unusable configuration.
  void Validate() const;
};

struct PairEvaluation {
  SpectralDistance logmel;
  double mfcc_dtw = 0.0;
  double chroma_dtw = 0.0;
  std::optional<double> cos_sim;
  std::optional<double> l2;
  Eigen::Index n_frames = 0;
  std::vector<std::string> notices;
};

struct EvaluationOptions {
  SpectralConfig spectral;
  std::optional<int> dtw_band;
  bool strict_embeddings = false;
  // Explicit sidecars; when empty the `<stem>.emb.json` siblings are used if
  // present.
  std::string embedding_a;
  std::string embedding_b;
};

// Loads, resamples, aligns and scores one pair of audio files.
PairEvaluation EvaluateFiles(const std::string& wav_a,
                             const std::string& wav_b,
                             const EvaluationOptions& options);

struct BatchResult {
  std::vector<PairMetricsRecord> records;
  std::vector<std::string> skipped;  // one notice per skipped comparison
  std::size_t expected = 0;
};

// Evaluates every enumerated pair for every model and seed. Throws
// IoError when no pair could be evaluated.
BatchResult RunBatch(const RunConfig& config, std::ostream& diagnostics);

// "# key=value" lines describing the analysis parameters of a run.
std::vector<std::string> RunMetadata(const RunConfig& config);

// Paired comparison of cos_sim (large - small) per category. Throws
// ValidationError when the two result sets do not cover the same keys.
std::vector<StatsRow> CompareModelScales(
    const std::vector<PairMetricsRecord>& small,
    const std::vector<PairMetricsRecord>& large);

struct SeedStabilityRow {
  std::string model;
  Category category = Category::kMls;
  std::map<long long, double> per_seed_means;
  SeedStability stability;
};

// Per (model, category) spread of the per-seed mean cosine similarity.
std::vector<SeedStabilityRow> SeedStabilityReport(
    const std::vector<PairMetricsRecord>& records);
std::string SeedStabilityCsv(const std::vector<SeedStabilityRow>& rows);

// Entry point shared by the tafrag binary and the tests.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace tafrag

#endif  // TAFRAG_CLI_H_
