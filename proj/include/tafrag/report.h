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

#ifndef TAFRAG_REPORT_H_
#define TAFRAG_REPORT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tafrag/manifest.h"
#include "tafrag/spectral.h"
#include "tafrag/stats.h"

namespace tafrag {

// One evaluated comparison. Embedding metrics are absent when either file
// has no sidecar.
struct PairMetricsRecord {
  std::string model;
  Category category = Category::kMls;
  std::string group_id;
  std::string variant_a;
  std::string variant_b;
  long long seed = 0;
  double l1 = 0.0;
  double rmse = 0.0;
  double mfcc_dtw = 0.0;
  double chroma_dtw = 0.0;
  std::optional<double> cos_sim;
  std::optional<double> l2;
};

// Throws ValidationError if a metric is non-finite or out of range.
void ValidateRecord(const PairMetricsRecord& record);

// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double value);

inline constexpr const char* kPairCsvHeader =
    "model,category,group_id,variant_a,variant_b,seed,l1,rmse,mfcc_dtw,"
    "chroma_dtw,cos_sim,l2";

// `metadata` lines are written first, each prefixed with "# ".
void WritePairCsv(std::ostream& out,
                  const std::vector<PairMetricsRecord>& records,
                  const std::vector<std::string>& metadata = {});
std::string PairCsvString(const std::vector<PairMetricsRecord>& records,
                          const std::vector<std::string>& metadata = {});

// Lines starting with '#' are skipped. Throws ParseError on malformed rows.
std::vector<PairMetricsRecord> ParsePairCsv(const std::string& text,
                                            const std::string& origin =
                                                "<memory>");
std::vector<PairMetricsRecord> LoadPairCsv(const std::string& path);

struct AggregateCell {
  std::string model;
  Category category = Category::kMls;
  std::size_t n = 0;
  double l1 = 0.0;
  double rmse = 0.0;
  double mfcc_dtw = 0.0;
  double chroma_dtw = 0.0;
  std::size_t n_embedding = 0;
  std::optional<double> cos_sim;
  std::optional<double> l2;
};

struct AggregateReport {
  std::vector<AggregateCell> cells;
  std::vector<std::string> warnings;
};

// Per (model, category) means. Rows follow model first-appearance order,
// then MLS, IS, SR. Cell values do not depend on record order.
AggregateReport Aggregate(const std::vector<PairMetricsRecord>& records);

// Summary tables: log-Mel (L1, RMSE), DTW (MFCC-DTW, C-DTW) and embedding
// (cosine, L2).
std::string LogMelTableCsv(const AggregateReport& report);
std::string DtwTableCsv(const AggregateReport& report);
std::string EmbeddingTableCsv(const AggregateReport& report);

struct StatsRow {
  Category category = Category::kMls;
  PairedTestResult result;
};

inline constexpr const char* kStatsCsvHeader =
    "Section,n,MeanSmall,MeanLarge,Delta,CILow,CIHigh,t,df,p,CohensDz,Label";

std::string StatsCsv(const std::vector<StatsRow>& rows,
                     const std::vector<std::string>& metadata = {});

// 256-entry perceptually ordered ramp, dark to bright.
const std::array<std::array<std::uint8_t, 3>, 256>& SpectrogramColorRamp();

// Binary PPM (P6): one pixel per cell, time left to right, Mel bin 0 on the
// bottom row, floor_db mapped to ramp entry 0 and 0 dB to entry 255.
std::string RenderSpectrogramPpm(const LogMelSpectrogram& spec);
void RenderSpectrogram(const LogMelSpectrogram& spec, const std::string& path);

void WriteTextFile(const std::string& path, const std::string& contents);
std::string ReadTextFile(const std::string& path);

}  // namespace tafrag

#endif  // TAFRAG_REPORT_H_
