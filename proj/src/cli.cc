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

#include "tafrag/cli.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "tafrag/alignment.h"
#include "tafrag/audio_io.h"
#include "tafrag/embedding.h"
#include "tafrag/features.h"
#include "tafrag/manifest.h"

#ifndef TAFRAG_DEFAULT_MANIFEST
#define TAFRAG_DEFAULT_MANIFEST "data/default_manifest.json"
#endif

namespace tafrag {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::optional<int> ParseBand(const std::string& text) {
  if (text.empty() || text == "off") return std::nullopt;
  int width = 0;
  try {
    std::size_t used = 0;
    width = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw ArgumentError("--dtw-band expects a width or 'off', got '" + text +
                        "'");
  }
  if (width < 0) throw ArgumentError("--dtw-band width must be >= 0");
  return width;
}

std::optional<EmbeddingVector> MaybeLoadEmbedding(const std::string& path,
                                                  bool explicit_path,
                                                  EmbeddingLoadMode mode) {
  if (!explicit_path && !fs::exists(path)) return std::nullopt;
  return LoadEmbedding(path, mode);
}

// Result-set key for paired comparisons across models.
using PairKey =
    std::tuple<Category, std::string, std::string, std::string, long long>;

PairKey KeyOf(const PairMetricsRecord& r) {
  return {r.category, r.group_id, r.variant_a, r.variant_b, r.seed};
}

std::string DescribeKey(const PairKey& key) {
  const auto& [category, group, a, b, seed] = key;
  return std::string(CategoryName(category)) + "/" + group + "/" + a + "-" +
         b + "/seed " + std::to_string(seed);
}

template <typename Fn>
void ParallelFor(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
  }
  // Report the first failure in task order so errors are deterministic too.
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void Emit(const std::string& text, const std::string& path,
          std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    WriteTextFile(path, text);
  }
}

struct SpectralFlags {
  int n_fft = SpectralConfig{}.n_fft;
  int hop = SpectralConfig{}.hop;
  int n_mels = SpectralConfig{}.n_mels;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--n-fft", n_fft, "FFT window length (power of two)");
    cmd->add_option("--hop", hop, "hop length in samples");
    cmd->add_option("--n-mels", n_mels, "Mel band count");
  }

  SpectralConfig Build() const {
    SpectralConfig config;
    config.n_fft = n_fft;
    config.hop = hop;
    config.n_mels = n_mels;
    config.Validate(kAnalysisSampleRate);
    return config;
  }
};

}  // namespace

int ExitCodeFor(const Error& error) {
  if (dynamic_cast<const ArgumentError*>(&error) ||
      dynamic_cast<const ConfigError*>(&error)) {
    return kExitUsage;
  }
  if (dynamic_cast<const ValidationError*>(&error) ||
      dynamic_cast<const PreconditionError*>(&error) ||
      dynamic_cast<const InsufficientDataError*>(&error)) {
    return kExitValidation;
  }
  return kExitInput;
}

void RunConfig::Validate() const {
  if (models.empty()) throw ArgumentError("at least one --model is required");
  if (seeds.empty()) throw ArgumentError("at least one --seed is required");
  for (const std::string& model : models) {
    if (model.empty() || model.find_first_of(",/\\\n") != std::string::npos) {
      throw ArgumentError("model label '" + model + "' is not usable");
    }
  }
  spectral.Validate(kAnalysisSampleRate);
}

PairEvaluation EvaluateFiles(const std::string& wav_a,
                             const std::string& wav_b,
                             const EvaluationOptions& options) {
  const auto [a, b] = PrepareForComparison(LoadWav(wav_a), LoadWav(wav_b));

  PairEvaluation eval;
  const LogMelSpectrogram spec_a = LogMel(a, options.spectral);
  const LogMelSpectrogram spec_b = LogMel(b, options.spectral);
  eval.logmel = LogMelDistance(spec_a, spec_b);
  eval.n_frames = spec_a.n_frames();
  eval.mfcc_dtw = Dtw(Mfcc(spec_a), Mfcc(spec_b),
                      {LocalCost::kEuclidean, options.dtw_band})
                      .normalized_cost;
  eval.chroma_dtw = Dtw(Chroma(a, options.spectral),
                        Chroma(b, options.spectral),
                        {LocalCost::kCosineDistance, options.dtw_band})
                        .normalized_cost;

  const EmbeddingLoadMode mode = options.strict_embeddings
                                     ? EmbeddingLoadMode::kStrict
                                     : EmbeddingLoadMode::kRenormalize;
  const bool explicit_a = !options.embedding_a.empty();
  const bool explicit_b = !options.embedding_b.empty();
  const std::string path_a =
      explicit_a ? options.embedding_a : SidecarPathFor(wav_a);
  const std::string path_b =
      explicit_b ? options.embedding_b : SidecarPathFor(wav_b);
  const auto emb_a = MaybeLoadEmbedding(path_a, explicit_a, mode);
  const auto emb_b = MaybeLoadEmbedding(path_b, explicit_b, mode);
  if (emb_a && emb_b) {
    eval.cos_sim = CosineSimilarity(*emb_a, *emb_b);
    eval.l2 = L2Distance(*emb_a, *emb_b);
  } else {
    eval.notices.push_back("embedding metrics omitted: no sidecar for " +
                           (emb_a ? wav_b : wav_a));
  }
  return eval;
}

std::vector<std::string> RunMetadata(const RunConfig& config) {
  std::vector<std::string> meta;
  const SpectralConfig& s = config.spectral;
  meta.push_back("sample_rate=" + FormatDouble(kAnalysisSampleRate));
  meta.push_back("n_fft=" + std::to_string(s.n_fft));
  meta.push_back("hop=" + std::to_string(s.hop));
  meta.push_back("n_mels=" + std::to_string(s.n_mels));
  meta.push_back("f_min=" + FormatDouble(s.f_min));
  meta.push_back("f_max=" + FormatDouble(s.f_max));
  meta.push_back("floor_db=" + FormatDouble(s.floor_db));
  meta.push_back("mfcc_coeffs=" + std::to_string(kDefaultMfccCoefficients));
  meta.push_back("dtw_band=" + (config.dtw_band
                                    ? std::to_string(*config.dtw_band)
                                    : std::string("off")));
  meta.push_back(std::string("strict_embeddings=") +
                 (config.strict_embeddings ? "true" : "false"));
  return meta;
}

BatchResult RunBatch(const RunConfig& config, std::ostream& diagnostics) {
  config.Validate();
  const Manifest manifest = LoadManifest(config.manifest_path);
  for (const std::string& w : manifest.warnings) {
    diagnostics << "warning: " << w << '\n';
  }
  const std::vector<ComparisonPair> pairs = EnumeratePairs(manifest.groups);

  struct Task {
    PairMetricsRecord record;
    std::string wav_a;
    std::string wav_b;
  };
  BatchResult result;
  std::vector<Task> tasks;
  for (const std::string& model : config.models) {
    for (long long seed : config.seeds) {
      for (const ComparisonPair& pair : pairs) {
        ++result.expected;
        Task task;
        task.record.model = model;
        task.record.category = pair.category;
        task.record.group_id = pair.group_id;
        task.record.variant_a = pair.variant_a;
        task.record.variant_b = pair.variant_b;
        task.record.seed = seed;
        task.wav_a = CorpusWavPath(config.audio_root, model, seed,
                                   pair.group_id, pair.variant_a);
        task.wav_b = CorpusWavPath(config.audio_root, model, seed,
                                   pair.group_id, pair.variant_b);
        std::string missing;
        for (const std::string* p : {&task.wav_a, &task.wav_b}) {
          if (!fs::exists(*p)) missing += (missing.empty() ? "" : ", ") + *p;
        }
        if (!missing.empty()) {
          result.skipped.push_back("skip " + model + " seed " +
                                   std::to_string(seed) + " " + pair.group_id +
                                   " " + pair.variant_a + "-" +
                                   pair.variant_b + ": missing " + missing);
          continue;
        }
        tasks.push_back(std::move(task));
      }
    }
  }
  for (const std::string& s : result.skipped) diagnostics << s << '\n';
  if (tasks.empty() && result.expected > 0) {
    throw IoError("batch: none of the " + std::to_string(result.expected) +
                  " comparisons has its audio files under '" +
                  config.audio_root + "'");
  }

  EvaluationOptions options;
  options.spectral = config.spectral;
  options.dtw_band = config.dtw_band;
  options.strict_embeddings = config.strict_embeddings;
  std::vector<std::vector<std::string>> notices(tasks.size());
  ParallelFor(tasks.size(), config.workers, [&](std::size_t i) {
    Task& task = tasks[i];
    PairEvaluation eval = EvaluateFiles(task.wav_a, task.wav_b, options);
    task.record.l1 = eval.logmel.l1;
    task.record.rmse = eval.logmel.rmse;
    task.record.mfcc_dtw = eval.mfcc_dtw;
    task.record.chroma_dtw = eval.chroma_dtw;
    task.record.cos_sim = eval.cos_sim;
    task.record.l2 = eval.l2;
    ValidateRecord(task.record);
    notices[i] = std::move(eval.notices);
  });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (const std::string& n : notices[i]) diagnostics << "notice: " << n << '\n';
    result.records.push_back(std::move(tasks[i].record));
  }
  return result;
}

std::vector<StatsRow> CompareModelScales(
    const std::vector<PairMetricsRecord>& small,
    const std::vector<PairMetricsRecord>& large) {
  auto index = [](const std::vector<PairMetricsRecord>& records,
                  const char* which) {
    std::map<PairKey, double> by_key;
    for (const PairMetricsRecord& r : records) {
      if (!r.cos_sim) {
        throw ValidationError(std::string(which) + " results lack cos_sim for " +
                              DescribeKey(KeyOf(r)));
      }
      if (!by_key.emplace(KeyOf(r), *r.cos_sim).second) {
        throw ValidationError(std::string(which) + " results repeat key " +
                              DescribeKey(KeyOf(r)));
      }
    }
    return by_key;
  };
  const auto small_by_key = index(small, "small-model");
  const auto large_by_key = index(large, "large-model");

  std::vector<std::string> orphans;
  for (const auto& [key, _] : small_by_key) {
    if (!large_by_key.count(key)) orphans.push_back(DescribeKey(key) + " (small only)");
  }
  for (const auto& [key, _] : large_by_key) {
    if (!small_by_key.count(key)) orphans.push_back(DescribeKey(key) + " (large only)");
  }
  if (!orphans.empty()) {
    constexpr std::size_t kShown = 10;
    std::string msg = "result sets cover different pairs (" +
                      std::to_string(orphans.size()) + " orphan keys):";
    for (std::size_t i = 0; i < orphans.size() && i < kShown; ++i) {
      msg += "\n  " + orphans[i];
    }
    if (orphans.size() > kShown) {
      msg += "\n  ... and " + std::to_string(orphans.size() - kShown) + " more";
    }
    throw ValidationError(msg);
  }

  std::vector<StatsRow> rows;
  for (Category category : kAllCategories) {
    std::vector<double> a;
    std::vector<double> b;
    // Follow the small-model file's row order within the category.
    for (const PairMetricsRecord& r : small) {
      if (r.category != category) continue;
      a.push_back(*r.cos_sim);
      b.push_back(large_by_key.at(KeyOf(r)));
    }
    if (a.empty()) continue;
    rows.push_back({category, PairedTTest(a, b)});
  }
  if (rows.empty()) throw InsufficientDataError("stats: no result rows");
  return rows;
}

std::vector<SeedStabilityRow> SeedStabilityReport(
    const std::vector<PairMetricsRecord>& records) {
  std::vector<std::string> models;
  std::map<std::tuple<std::string, Category, long long>, std::vector<double>>
      values;
  for (const PairMetricsRecord& r : records) {
    if (!r.cos_sim) continue;
    if (std::find(models.begin(), models.end(), r.model) == models.end()) {
      models.push_back(r.model);
    }
    values[{r.model, r.category, r.seed}].push_back(*r.cos_sim);
  }
  std::vector<SeedStabilityRow> rows;
  for (const std::string& model : models) {
    for (Category category : kAllCategories) {
      SeedStabilityRow row;
      row.model = model;
      row.category = category;
      for (auto& [key, cos] : values) {
        if (std::get<0>(key) != model || std::get<1>(key) != category) continue;
        std::sort(cos.begin(), cos.end());
        double sum = 0.0;
        for (double c : cos) sum += c;
        row.per_seed_means[std::get<2>(key)] = sum / static_cast<double>(cos.size());
      }
      if (row.per_seed_means.empty()) continue;
      if (row.per_seed_means.size() < 2) {
        throw InsufficientDataError("seeds: model '" + model + "' category " +
                                    std::string(CategoryName(category)) +
                                    " has results for only one seed");
      }
      row.stability = SeedStabilityOf(row.per_seed_means);
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    throw InsufficientDataError("seeds: no records carry cos_sim");
  }
  return rows;
}

std::string SeedStabilityCsv(const std::vector<SeedStabilityRow>& rows) {
  std::ostringstream out;
  out << "# range = max - min of per-seed mean cos_sim; range_points = range "
         "* 100 (percentage points, not relative percent)\n";
  out << "model,category,n_seeds,seed_means,min_mean,max_mean,range,"
         "range_points\n";
  for (const SeedStabilityRow& row : rows) {
    std::string means;
    for (const auto& [seed, mean] : row.per_seed_means) {
      if (!means.empty()) means += ';';
      means += std::to_string(seed) + ":" + FormatDouble(mean);
    }
    out << row.model << ',' << CategoryName(row.category) << ','
        << row.per_seed_means.size() << ',' << means << ','
        << FormatDouble(row.stability.min_mean) << ','
        << FormatDouble(row.stability.max_mean) << ','
        << FormatDouble(row.stability.range) << ','
        << FormatDouble(row.stability.range_points) << '\n';
  }
  return out.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"tafrag: semantic-fragility evaluation for text-to-audio output"};
  app.require_subcommand(1);

  // compare
  std::string cmp_a, cmp_b, cmp_emb_a, cmp_emb_b, cmp_band = "off";
  bool cmp_strict = false;
  SpectralFlags cmp_spectral;
  CLI::App* compare = app.add_subcommand("compare", "score one pair of WAV files");
  compare->add_option("a", cmp_a, "first WAV file")->required();
  compare->add_option("b", cmp_b, "second WAV file")->required();
  compare->add_option("--emb-a", cmp_emb_a, "embedding sidecar for a");
  compare->add_option("--emb-b", cmp_emb_b, "embedding sidecar for b");
  compare->add_option("--dtw-band", cmp_band, "Sakoe-Chiba width or 'off'");
  compare->add_flag("--strict-embeddings", cmp_strict,
                    "reject sidecars that are not unit norm");
  cmp_spectral.Attach(compare);

  // batch
  RunConfig batch_config;
  batch_config.manifest_path = TAFRAG_DEFAULT_MANIFEST;
  std::string batch_band = "off";
  std::vector<long long> batch_seeds;
  SpectralFlags batch_spectral;
  CLI::App* batch = app.add_subcommand("batch", "score every manifest pair in a corpus");
  batch->add_option("--manifest", batch_config.manifest_path, "manifest JSON");
  batch->add_option("--audio-root", batch_config.audio_root, "corpus root")->required();
  batch->add_option("--model", batch_config.models, "model label (repeatable)")
      ->required();
  batch->add_option("--seed", batch_seeds, "seed directory (repeatable, default 0)");
  batch->add_option("--out", batch_config.out_dir,
                    "output directory (pairs.csv and aggregate tables)");
  batch->add_flag("--strict-embeddings", batch_config.strict_embeddings,
                  "reject sidecars that are not unit norm");
  batch->add_option("--dtw-band", batch_band, "Sakoe-Chiba width or 'off'");
  batch_spectral.Attach(batch);

  // stats
  std::string stats_small, stats_large, stats_out;
  CLI::App* stats = app.add_subcommand(
      "stats", "paired t-tests of cos_sim between two model scales");
  stats->add_option("small", stats_small, "pairs.csv of the smaller model")->required();
  stats->add_option("large", stats_large, "pairs.csv of the larger model")->required();
  stats->add_option("--out", stats_out, "output CSV (default stdout)");

  // seeds
  std::vector<std::string> seed_inputs;
  std::string seeds_out;
  CLI::App* seeds = app.add_subcommand("seeds", "cosine stability across seeds");
  seeds->add_option("results", seed_inputs, "per-seed pairs.csv files")->required();
  seeds->add_option("--out", seeds_out, "output CSV (default stdout)");

  // spectrogram
  std::string spec_wav, spec_out;
  SpectralFlags spec_spectral;
  CLI::App* spectrogram = app.add_subcommand("spectrogram", "render a log-Mel PPM");
  spectrogram->add_option("wav", spec_wav, "input WAV")->required();
  spectrogram->add_option("out", spec_out, "output .ppm")->required();
  spec_spectral.Attach(spectrogram);

  // features
  std::string feat_wav, feat_kind, feat_out;
  SpectralFlags feat_spectral;
  CLI::App* features = app.add_subcommand("features", "dump a feature sequence as JSON");
  features->add_option("wav", feat_wav, "input WAV")->required();
  features->add_option("kind", feat_kind, "logmel, mfcc or chroma")->required();
  features->add_option("out", feat_out, "output .json")->required();
  feat_spectral.Attach(features);

  // validate-manifest
  std::string vm_path;
  std::string vm_flag;
  CLI::App* validate = app.add_subcommand("validate-manifest", "check a manifest");
  validate->add_option("path", vm_path, "manifest JSON");
  validate->add_option("--manifest", vm_flag, "manifest JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compare->parsed()) {
      EvaluationOptions options;
      options.spectral = cmp_spectral.Build();
      options.dtw_band = ParseBand(cmp_band);
      options.strict_embeddings = cmp_strict;
      options.embedding_a = cmp_emb_a;
      options.embedding_b = cmp_emb_b;
      const PairEvaluation eval = EvaluateFiles(cmp_a, cmp_b, options);
      for (const std::string& n : eval.notices) err << "notice: " << n << '\n';
      ordered_json doc;
      doc["a"] = cmp_a;
      doc["b"] = cmp_b;
      doc["sample_rate"] = kAnalysisSampleRate;
      doc["n_frames"] = eval.n_frames;
      doc["l1"] = eval.logmel.l1;
      doc["rmse"] = eval.logmel.rmse;
      doc["mfcc_dtw"] = eval.mfcc_dtw;
      doc["chroma_dtw"] = eval.chroma_dtw;
      if (eval.cos_sim) doc["cos_sim"] = *eval.cos_sim;
      if (eval.l2) doc["l2"] = *eval.l2;
      out << doc.dump(2) << '\n';
      return kExitOk;
    }
    if (batch->parsed()) {
      if (!batch_seeds.empty()) batch_config.seeds = batch_seeds;
      batch_config.spectral = batch_spectral.Build();
      batch_config.dtw_band = ParseBand(batch_band);
      const BatchResult result = RunBatch(batch_config, err);
      const std::vector<std::string> meta = RunMetadata(batch_config);
      if (batch_config.out_dir.empty()) {
        WritePairCsv(out, result.records, meta);
      } else {
        const fs::path dir(batch_config.out_dir);
        fs::create_directories(dir);
        WriteTextFile((dir / "pairs.csv").string(),
                      PairCsvString(result.records, meta));
        const AggregateReport report = Aggregate(result.records);
        for (const std::string& w : report.warnings) err << "warning: " << w << '\n';
        WriteTextFile((dir / "table_logmel.csv").string(), LogMelTableCsv(report));
        WriteTextFile((dir / "table_dtw.csv").string(), DtwTableCsv(report));
        WriteTextFile((dir / "table_embedding.csv").string(),
                      EmbeddingTableCsv(report));
      }
      err << "evaluated " << result.records.size() << " of " << result.expected
          << " comparisons (" << result.skipped.size() << " skipped)\n";
      return kExitOk;
    }
    if (stats->parsed()) {
      const std::vector<StatsRow> rows =
          CompareModelScales(LoadPairCsv(stats_small), LoadPairCsv(stats_large));
      Emit(StatsCsv(rows, {"delta = mean(cos_sim large - cos_sim small); "
                           "95% CI; two-sided p"}),
           stats_out, out);
      return kExitOk;
    }
    if (seeds->parsed()) {
      if (seed_inputs.size() < 2) {
        err << "seeds: at least two result files are required\n";
        return kExitUsage;
      }
      std::vector<PairMetricsRecord> all;
      for (const std::string& path : seed_inputs) {
        std::vector<PairMetricsRecord> records = LoadPairCsv(path);
        all.insert(all.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
      }
      Emit(SeedStabilityCsv(SeedStabilityReport(all)), seeds_out, out);
      return kExitOk;
    }
    if (spectrogram->parsed()) {
      const SpectralConfig config = spec_spectral.Build();
      const AudioBuffer audio = Resample(LoadWav(spec_wav), kAnalysisSampleRate);
      RenderSpectrogram(LogMel(audio, config), spec_out);
      return kExitOk;
    }
    if (features->parsed()) {
      const SpectralConfig config = feat_spectral.Build();
      const FeatureKind kind = ParseFeatureKind(feat_kind);
      const AudioBuffer audio = Resample(LoadWav(feat_wav), kAnalysisSampleRate);
      FeatureSequence seq;
      switch (kind) {
        case FeatureKind::kLogMel:
          seq = LogMelFeatures(LogMel(audio, config));
          break;
        case FeatureKind::kMfcc:
          seq = Mfcc(LogMel(audio, config));
          break;
        case FeatureKind::kChroma:
          seq = Chroma(audio, config);
          break;
      }
      ordered_json doc;
      doc["kind"] = std::string(FeatureKindName(seq.kind));
      doc["dim"] = seq.dim();
      doc["frame_rate"] = seq.frame_rate;
      doc["n_frames"] = seq.n_frames();
      ordered_json frames = ordered_json::array();
      for (Eigen::Index r = 0; r < seq.dim(); ++r) {
        for (Eigen::Index c = 0; c < seq.n_frames(); ++c) {
          frames.push_back(seq.frames(r, c));
        }
      }
      doc["frames"] = std::move(frames);
      WriteTextFile(feat_out, doc.dump() + "\n");
      return kExitOk;
    }
    if (validate->parsed()) {
      std::string path = !vm_path.empty() ? vm_path : vm_flag;
      if (path.empty()) path = TAFRAG_DEFAULT_MANIFEST;
      const Manifest manifest = LoadManifest(path);
      for (const std::string& w : manifest.warnings) err << "warning: " << w << '\n';
      std::map<Category, std::size_t> groups;
      for (const PerturbationGroup& g : manifest.groups) ++groups[g.category];
      const auto pairs = EnumeratePairs(manifest.groups);
      out << path << ": ok\n";
      for (Category c : kAllCategories) {
        out << "  " << CategoryName(c) << " groups: " << groups[c] << '\n';
      }
      out << "  comparison pairs: " << pairs.size() << '\n';
      out << "  audio files per (model, seed): "
          << CorpusFileCount(manifest.groups) << '\n';
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace tafrag
