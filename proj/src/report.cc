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

#include "tafrag/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tafrag/errors.h"

namespace tafrag {
namespace {

constexpr std::array<std::array<std::uint8_t, 3>, 256> kRamp = {{
    {68, 1, 84}, {68, 2, 86}, {69, 4, 87}, {69, 5, 89},
    {70, 7, 90}, {70, 8, 92}, {70, 10, 93}, {70, 11, 94},
    {71, 13, 96}, {71, 14, 97}, {71, 16, 99}, {71, 17, 100},
    {71, 19, 101}, {72, 20, 103}, {72, 22, 104}, {72, 23, 105},
    {72, 24, 106}, {72, 26, 108}, {72, 27, 109}, {72, 28, 110},
    {72, 29, 111}, {72, 31, 112}, {72, 32, 113}, {72, 33, 115},
    {72, 35, 116}, {72, 36, 117}, {72, 37, 118}, {72, 38, 119},
    {72, 40, 120}, {72, 41, 121}, {71, 42, 122}, {71, 44, 122},
    {71, 45, 123}, {71, 46, 124}, {71, 47, 125}, {70, 48, 126},
    {70, 50, 126}, {70, 51, 127}, {70, 52, 128}, {69, 53, 129},
    {69, 55, 129}, {69, 56, 130}, {68, 57, 131}, {68, 58, 131},
    {68, 59, 132}, {67, 61, 132}, {67, 62, 133}, {66, 63, 133},
    {66, 64, 134}, {66, 65, 134}, {65, 66, 135}, {65, 68, 135},
    {64, 69, 136}, {64, 70, 136}, {63, 71, 136}, {63, 72, 137},
    {62, 73, 137}, {62, 74, 137}, {62, 76, 138}, {61, 77, 138},
    {61, 78, 138}, {60, 79, 138}, {60, 80, 139}, {59, 81, 139},
    {59, 82, 139}, {58, 83, 139}, {58, 84, 140}, {57, 85, 140},
    {57, 86, 140}, {56, 88, 140}, {56, 89, 140}, {55, 90, 140},
    {55, 91, 141}, {54, 92, 141}, {54, 93, 141}, {53, 94, 141},
    {53, 95, 141}, {52, 96, 141}, {52, 97, 141}, {51, 98, 141},
    {51, 99, 141}, {50, 100, 142}, {50, 101, 142}, {49, 102, 142},
    {49, 103, 142}, {49, 104, 142}, {48, 105, 142}, {48, 106, 142},
    {47, 107, 142}, {47, 108, 142}, {46, 109, 142}, {46, 110, 142},
    {46, 111, 142}, {45, 112, 142}, {45, 113, 142}, {44, 113, 142},
    {44, 114, 142}, {44, 115, 142}, {43, 116, 142}, {43, 117, 142},
    {42, 118, 142}, {42, 119, 142}, {42, 120, 142}, {41, 121, 142},
    {41, 122, 142}, {41, 123, 142}, {40, 124, 142}, {40, 125, 142},
    {39, 126, 142}, {39, 127, 142}, {39, 128, 142}, {38, 129, 142},
    {38, 130, 142}, {38, 130, 142}, {37, 131, 142}, {37, 132, 142},
    {37, 133, 142}, {36, 134, 142}, {36, 135, 142}, {35, 136, 142},
    {35, 137, 142}, {35, 138, 141}, {34, 139, 141}, {34, 140, 141},
    {34, 141, 141}, {33, 142, 141}, {33, 143, 141}, {33, 144, 141},
    {33, 145, 140}, {32, 146, 140}, {32, 146, 140}, {32, 147, 140},
    {31, 148, 140}, {31, 149, 139}, {31, 150, 139}, {31, 151, 139},
    {31, 152, 139}, {31, 153, 138}, {31, 154, 138}, {30, 155, 138},
    {30, 156, 137}, {30, 157, 137}, {31, 158, 137}, {31, 159, 136},
    {31, 160, 136}, {31, 161, 136}, {31, 161, 135}, {31, 162, 135},
    {32, 163, 134}, {32, 164, 134}, {33, 165, 133}, {33, 166, 133},
    {34, 167, 133}, {34, 168, 132}, {35, 169, 131}, {36, 170, 131},
    {37, 171, 130}, {37, 172, 130}, {38, 173, 129}, {39, 173, 129},
    {40, 174, 128}, {41, 175, 127}, {42, 176, 127}, {44, 177, 126},
    {45, 178, 125}, {46, 179, 124}, {47, 180, 124}, {49, 181, 123},
    {50, 182, 122}, {52, 182, 121}, {53, 183, 121}, {55, 184, 120},
    {56, 185, 119}, {58, 186, 118}, {59, 187, 117}, {61, 188, 116},
    {63, 188, 115}, {64, 189, 114}, {66, 190, 113}, {68, 191, 112},
    {70, 192, 111}, {72, 193, 110}, {74, 193, 109}, {76, 194, 108},
    {78, 195, 107}, {80, 196, 106}, {82, 197, 105}, {84, 197, 104},
    {86, 198, 103}, {88, 199, 101}, {90, 200, 100}, {92, 200, 99},
    {94, 201, 98}, {96, 202, 96}, {99, 203, 95}, {101, 203, 94},
    {103, 204, 92}, {105, 205, 91}, {108, 205, 90}, {110, 206, 88},
    {112, 207, 87}, {115, 208, 86}, {117, 208, 84}, {119, 209, 83},
    {122, 209, 81}, {124, 210, 80}, {127, 211, 78}, {129, 211, 77},
    {132, 212, 75}, {134, 213, 73}, {137, 213, 72}, {139, 214, 70},
    {142, 214, 69}, {144, 215, 67}, {147, 215, 65}, {149, 216, 64},
    {152, 216, 62}, {155, 217, 60}, {157, 217, 59}, {160, 218, 57},
    {162, 218, 55}, {165, 219, 54}, {168, 219, 52}, {170, 220, 50},
    {173, 220, 48}, {176, 221, 47}, {178, 221, 45}, {181, 222, 43},
    {184, 222, 41}, {186, 222, 40}, {189, 223, 38}, {192, 223, 37},
    {194, 223, 35}, {197, 224, 33}, {200, 224, 32}, {202, 225, 31},
    {205, 225, 29}, {208, 225, 28}, {210, 226, 27}, {213, 226, 26},
    {216, 226, 25}, {218, 227, 25}, {221, 227, 24}, {223, 227, 24},
    {226, 228, 24}, {229, 228, 25}, {231, 228, 25}, {234, 229, 26},
    {236, 229, 27}, {239, 229, 28}, {241, 229, 29}, {244, 230, 30},
    {246, 230, 32}, {248, 230, 33}, {251, 231, 35}, {253, 231, 37},
}};

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double ParseDouble(const std::string& s, const std::string& where) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(where + ": '" + s + "' is not a number");
  }
  return v;
}

long long ParseInteger(const std::string& s, const std::string& where) {
  long long v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(where + ": '" + s + "' is not an integer");
  }
  return v;
}

std::string OptionalCell(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

// Sorted summation makes the mean independent of input order.
double OrderFreeMean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

void WriteMetadata(std::ostream& out, const std::vector<std::string>& lines) {
  for (const std::string& line : lines) out << "# " << line << '\n';
}

}  // namespace

void ValidateRecord(const PairMetricsRecord& r) {
  const std::string where = "record " + r.model + "/" + r.group_id + "/" +
                            r.variant_a + "-" + r.variant_b;
  for (const auto& [name, v] :
       {std::pair{"l1", r.l1}, std::pair{"rmse", r.rmse},
        std::pair{"mfcc_dtw", r.mfcc_dtw},
        std::pair{"chroma_dtw", r.chroma_dtw}}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError(where + ": " + name +
                            " must be finite and non-negative");
    }
  }
  if (r.cos_sim && !(std::isfinite(*r.cos_sim) && *r.cos_sim >= -1.0 &&
                     *r.cos_sim <= 1.0)) {
    throw ValidationError(where + ": cos_sim must lie in [-1, 1]");
  }
  if (r.l2 && !(std::isfinite(*r.l2) && *r.l2 >= 0.0)) {
    throw ValidationError(where + ": l2 must be finite and non-negative");
  }
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WritePairCsv(std::ostream& out,
                  const std::vector<PairMetricsRecord>& records,
                  const std::vector<std::string>& metadata) {
  WriteMetadata(out, metadata);
  out << kPairCsvHeader << '\n';
  for (const PairMetricsRecord& r : records) {
    out << r.model << ',' << CategoryName(r.category) << ',' << r.group_id
        << ',' << r.variant_a << ',' << r.variant_b << ',' << r.seed << ','
        << FormatDouble(r.l1) << ',' << FormatDouble(r.rmse) << ','
        << FormatDouble(r.mfcc_dtw) << ',' << FormatDouble(r.chroma_dtw)
        << ',' << OptionalCell(r.cos_sim) << ',' << OptionalCell(r.l2)
        << '\n';
  }
}

std::string PairCsvString(const std::vector<PairMetricsRecord>& records,
                          const std::vector<std::string>& metadata) {
  std::ostringstream out;
  WritePairCsv(out, records, metadata);
  return out.str();
}

std::vector<PairMetricsRecord> ParsePairCsv(const std::string& text,
                                            const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::vector<PairMetricsRecord> records;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    if (!have_header) {
      if (line != kPairCsvHeader) {
        throw ParseError(where + ": unexpected header '" + line + "'");
      }
      have_header = true;
      continue;
    }
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 12) {
      throw ParseError(where + ": expected 12 fields, found " +
                       std::to_string(f.size()));
    }
    PairMetricsRecord r;
    r.model = f[0];
    try {
      r.category = ParseCategory(f[1]);
    } catch (const ValidationError&) {
      throw ParseError(where + ": unknown category '" + f[1] + "'");
    }
    r.group_id = f[2];
    r.variant_a = f[3];
    r.variant_b = f[4];
    r.seed = ParseInteger(f[5], where);
    r.l1 = ParseDouble(f[6], where);
    r.rmse = ParseDouble(f[7], where);
    r.mfcc_dtw = ParseDouble(f[8], where);
    r.chroma_dtw = ParseDouble(f[9], where);
    if (!f[10].empty()) r.cos_sim = ParseDouble(f[10], where);
    if (!f[11].empty()) r.l2 = ParseDouble(f[11], where);
    ValidateRecord(r);
    records.push_back(std::move(r));
  }
  if (!have_header) throw ParseError(origin + ": missing CSV header");
  return records;
}

std::vector<PairMetricsRecord> LoadPairCsv(const std::string& path) {
  return ParsePairCsv(ReadTextFile(path), path);
}

AggregateReport Aggregate(const std::vector<PairMetricsRecord>& records) {
  if (records.empty()) {
    throw InsufficientDataError("aggregate: no records to report");
  }
  std::vector<std::string> models;
  struct Columns {
    std::vector<double> l1, rmse, mfcc, chroma, cos, l2;
  };
  std::map<std::pair<std::string, Category>, Columns> cells;
  for (const PairMetricsRecord& r : records) {
    if (std::find(models.begin(), models.end(), r.model) == models.end()) {
      models.push_back(r.model);
    }
    Columns& c = cells[{r.model, r.category}];
    c.l1.push_back(r.l1);
    c.rmse.push_back(r.rmse);
    c.mfcc.push_back(r.mfcc_dtw);
    c.chroma.push_back(r.chroma_dtw);
    if (r.cos_sim) c.cos.push_back(*r.cos_sim);
    if (r.l2) c.l2.push_back(*r.l2);
  }

  AggregateReport report;
  for (const std::string& model : models) {
    for (Category category : kAllCategories) {
      auto it = cells.find({model, category});
      if (it == cells.end()) {
        report.warnings.push_back("no records for model '" + model +
                                  "', category " +
                                  std::string(CategoryName(category)));
        continue;
      }
      const Columns& c = it->second;
      AggregateCell cell;
      cell.model = model;
      cell.category = category;
      cell.n = c.l1.size();
      cell.l1 = OrderFreeMean(c.l1);
      cell.rmse = OrderFreeMean(c.rmse);
      cell.mfcc_dtw = OrderFreeMean(c.mfcc);
      cell.chroma_dtw = OrderFreeMean(c.chroma);
      cell.n_embedding = c.cos.size();
      if (!c.cos.empty()) cell.cos_sim = OrderFreeMean(c.cos);
      if (!c.l2.empty()) cell.l2 = OrderFreeMean(c.l2);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

std::string LogMelTableCsv(const AggregateReport& report) {
  std::ostringstream out;
  out << "Model,Condition,n,Avg. L1,Avg. RMSE\n";
  for (const AggregateCell& c : report.cells) {
    out << c.model << ',' << CategoryName(c.category) << ',' << c.n << ','
        << FormatDouble(c.l1) << ',' << FormatDouble(c.rmse) << '\n';
  }
  return out.str();
}

std::string DtwTableCsv(const AggregateReport& report) {
  std::ostringstream out;
  out << "Model,Condition,n,Avg. MFCC-DTW,Avg. C-DTW\n";
  for (const AggregateCell& c : report.cells) {
    out << c.model << ',' << CategoryName(c.category) << ',' << c.n << ','
        << FormatDouble(c.mfcc_dtw) << ',' << FormatDouble(c.chroma_dtw)
        << '\n';
  }
  return out.str();
}

std::string EmbeddingTableCsv(const AggregateReport& report) {
  std::ostringstream out;
  out << "# cosine reference thresholds: moderate stability "
      << FormatDouble(kModerateStabilityThreshold) << ", strong equivalence "
      << FormatDouble(kStrongEquivalenceThreshold) << '\n';
  out << "Model,Condition,n,Cosine Similarity,L2 Distance\n";
  for (const AggregateCell& c : report.cells) {
    out << c.model << ',' << CategoryName(c.category) << ',' << c.n_embedding
        << ',' << OptionalCell(c.cos_sim) << ',' << OptionalCell(c.l2)
        << '\n';
  }
  return out.str();
}

std::string StatsCsv(const std::vector<StatsRow>& rows,
                     const std::vector<std::string>& metadata) {
  std::ostringstream out;
  WriteMetadata(out, metadata);
  out << kStatsCsvHeader << '\n';
  for (const StatsRow& row : rows) {
    const PairedTestResult& r = row.result;
    out << CategoryName(row.category) << ',' << r.n << ','
        << OptionalCell(r.mean_a) << ',' << OptionalCell(r.mean_b) << ','
        << FormatDouble(r.delta) << ',' << FormatDouble(r.ci_low) << ','
        << FormatDouble(r.ci_high) << ',' << FormatDouble(r.t) << ',' << r.df
        << ',' << FormatDouble(r.p) << ',' << FormatDouble(r.dz) << ','
        << EffectSizeName(r.dz_label) << '\n';
  }
  return out.str();
}

const std::array<std::array<std::uint8_t, 3>, 256>& SpectrogramColorRamp() {
  return kRamp;
}

std::string RenderSpectrogramPpm(const LogMelSpectrogram& spec) {
  const Eigen::Index width = spec.n_frames();
  const Eigen::Index height = spec.n_mels();
  const double floor_db = spec.config.floor_db;
  std::string out = "P6\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + static_cast<std::size_t>(width * height * 3));
  std::size_t pos = header;
  for (Eigen::Index row = 0; row < height; ++row) {
    const Eigen::Index mel = height - 1 - row;
    for (Eigen::Index col = 0; col < width; ++col) {
      const double level = (spec.values(mel, col) - floor_db) / -floor_db;
      const auto index = static_cast<std::size_t>(
          std::clamp(std::lround(level * 255.0), 0L, 255L));
      for (std::uint8_t channel : kRamp[index]) {
        out[pos++] = static_cast<char>(channel);
      }
    }
  }
  return out;
}

void RenderSpectrogram(const LogMelSpectrogram& spec,
                       const std::string& path) {
  WriteTextFile(path, RenderSpectrogramPpm(spec));
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError(path + ": write failed");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tafrag
