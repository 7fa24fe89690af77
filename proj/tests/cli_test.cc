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

#include <filesystem>
#include <memory>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "tafrag/democorpus.h"
#include "tafrag/manifest.h"
#include "tafrag/report.h"
#include "test_util.h"

namespace tafrag {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t DataRows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

class CliCorpusTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = std::make_unique<testing::TempDir>("cli");
    const Manifest m = LoadManifest(TAFRAG_DEFAULT_MANIFEST);
    for (long long seed : {0, 1}) {
      DemoCorpusOptions opts;
      opts.seed = seed;
      opts.duration_s = 1.0;
      opts.cosine_center = DefaultCosineCenter(seed);
      WriteDemoCorpus(m.groups, root(), opts);
    }
  }
  static void TearDownTestSuite() { dir_.reset(); }
  static std::string root() { return dir_->File("corpus"); }
  static std::string wav(const std::string& group, const std::string& variant,
                         long long seed = 0) {
    return CorpusWavPath(root(), "mock-small", seed, group, variant);
  }

  static std::unique_ptr<testing::TempDir> dir_;
};

std::unique_ptr<testing::TempDir> CliCorpusTest::dir_;

TEST_F(CliCorpusTest, CompareIdenticalIsZero) {
  const std::string a = wav("mls01", "calm");
  const CliRun r = Invoke({"compare", a, a, "--emb-a", SidecarPathFor(a), "--emb-b",
                        SidecarPathFor(a)});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["l1"].get<double>(), 0.0);
  EXPECT_EQ(doc["rmse"].get<double>(), 0.0);
  EXPECT_EQ(doc["mfcc_dtw"].get<double>(), 0.0);
  EXPECT_EQ(doc["chroma_dtw"].get<double>(), 0.0);
  EXPECT_NEAR(doc["cos_sim"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(doc["l2"].get<double>(), 0.0, 1e-6);
}

TEST_F(CliCorpusTest, CompareFindsSiblingSidecars) {
  const CliRun r = Invoke({"compare", wav("mls01", "calm"), wav("mls01", "quiet")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc.contains("cos_sim"));
  EXPECT_GT(doc["l1"].get<double>(), 0.0);
}

TEST_F(CliCorpusTest, CompareWithoutSidecarsOmitsEmbeddings) {
  testing::TempDir bare("bare");
  fs::copy_file(wav("sr01", "original"), bare.File("a.wav"));
  fs::copy_file(wav("sr01", "rephrased"), bare.File("b.wav"));
  const CliRun r = Invoke({"compare", bare.File("a.wav"), bare.File("b.wav")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_FALSE(doc.contains("cos_sim"));
  EXPECT_FALSE(doc.contains("l2"));
  EXPECT_TRUE(doc.contains("mfcc_dtw"));
  EXPECT_NE(r.err.find("notice:"), std::string::npos);
}

TEST_F(CliCorpusTest, CompareErrorsMapToExitCodes) {
  EXPECT_EQ(Invoke({"compare", "/nonexistent/a.wav", wav("mls01", "calm")}).code,
            kExitInput);
  EXPECT_EQ(Invoke({"compare", wav("mls01", "calm")}).code, kExitUsage);
  EXPECT_EQ(Invoke({"compare", wav("mls01", "calm"), wav("mls01", "calm"),
                 "--n-fft", "1000"})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
}

TEST_F(CliCorpusTest, BatchRowCounts) {
  const CliRun one = Invoke({"batch", "--audio-root", root(), "--model", "mock-small"});
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(DataRows(one.out), 105u);
  EXPECT_NE(one.out.find("# n_fft=2048"), std::string::npos);

  const CliRun two = Invoke({"batch", "--audio-root", root(), "--model", "mock-small",
                          "--seed", "0", "--seed", "1"});
  ASSERT_EQ(two.code, kExitOk) << two.err;
  EXPECT_EQ(DataRows(two.out), 210u);

  EXPECT_EQ(Invoke({"batch", "--audio-root", root(), "--model", "mock-small"}).out,
            one.out);
}

TEST_F(CliCorpusTest, BatchSkipsMissingFile) {
  testing::TempDir copy("partial");
  fs::copy(root(), copy.path(), fs::copy_options::recursive);
  ASSERT_TRUE(fs::remove(CorpusWavPath(copy.path().string(), "mock-small", 0,
                                       "mls05", "sorrowful")));
  const CliRun r = Invoke({"batch", "--audio-root", copy.path().string(), "--model",
                        "mock-small", "--out", copy.File("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(LoadPairCsv(copy.File("out/pairs.csv")).size(), 104u);
  EXPECT_NE(r.err.find("skip"), std::string::npos);
  EXPECT_NE(r.err.find("mls05"), std::string::npos);
  for (const char* table : {"table_logmel.csv", "table_dtw.csv", "table_embedding.csv"}) {
    EXPECT_EQ(DataRows(ReadTextFile(copy.File(std::string("out/") + table))), 3u);
  }
}

TEST_F(CliCorpusTest, BatchOnEmptyRootIsInputError) {
  testing::TempDir empty("empty");
  EXPECT_EQ(Invoke({"batch", "--audio-root", empty.path().string(), "--model", "m"}).code,
            kExitInput);
  EXPECT_EQ(Invoke({"batch", "--audio-root", root()}).code, kExitUsage);
}

TEST_F(CliCorpusTest, StatsAndSeeds) {
  testing::TempDir work("stats");
  const std::string s0 = work.File("s0.csv");
  const std::string s1 = work.File("s1.csv");
  ASSERT_EQ(Invoke({"batch", "--audio-root", root(), "--model", "mock-small",
                 "--seed", "0", "--out", work.File("o0")})
                .code,
            kExitOk);
  ASSERT_EQ(Invoke({"batch", "--audio-root", root(), "--model", "mock-small",
                 "--seed", "1", "--out", work.File("o1")})
                .code,
            kExitOk);
  fs::copy_file(work.File("o0/pairs.csv"), s0);
  fs::copy_file(work.File("o1/pairs.csv"), s1);

  const CliRun same = Invoke({"stats", s0, s0});
  ASSERT_EQ(same.code, kExitOk) << same.err;
  EXPECT_NE(same.out.find("MLS,30,"), std::string::npos);
  EXPECT_NE(same.out.find("IS,45,"), std::string::npos);
  for (const StatsRow& row :
       CompareModelScales(LoadPairCsv(s0), LoadPairCsv(s0))) {
    EXPECT_EQ(row.result.delta, 0.0);
    EXPECT_EQ(row.result.t, 0.0);
    EXPECT_EQ(row.result.p, 1.0);
  }

  // Drop one data row from the second file.
  std::string text = ReadTextFile(s0);
  text.erase(text.rfind('\n', text.size() - 2) + 1);
  WriteTextFile(work.File("short.csv"), text);
  const CliRun orphan = Invoke({"stats", s0, work.File("short.csv")});
  EXPECT_EQ(orphan.code, kExitValidation);
  EXPECT_NE(orphan.err.find("sr30"), std::string::npos);

  const CliRun seeds = Invoke({"seeds", s0, s1, "--out", work.File("seeds.csv")});
  ASSERT_EQ(seeds.code, kExitOk) << seeds.err;
  const std::string report = ReadTextFile(work.File("seeds.csv"));
  EXPECT_NE(report.find("mock-small,MLS,2,"), std::string::npos);
  EXPECT_EQ(Invoke({"seeds", s0}).code, kExitUsage);
  EXPECT_EQ(Invoke({"stats", s0, "/nonexistent.csv"}).code, kExitInput);
}

TEST_F(CliCorpusTest, SpectrogramAndFeatures) {
  testing::TempDir work("render");
  const std::string w = wav("is01", "afraid");
  ASSERT_EQ(Invoke({"spectrogram", w, work.File("a.ppm")}).code, kExitOk);
  ASSERT_EQ(Invoke({"spectrogram", w, work.File("b.ppm")}).code, kExitOk);
  const std::string ppm = ReadTextFile(work.File("a.ppm"));
  EXPECT_EQ(ppm, ReadTextFile(work.File("b.ppm")));
  EXPECT_EQ(ppm.rfind("P6\n63 128\n255\n", 0), 0u);

  for (const char* kind : {"logmel", "mfcc", "chroma"}) {
    const std::string out = work.File(std::string(kind) + ".json");
    ASSERT_EQ(Invoke({"features", w, kind, out}).code, kExitOk) << kind;
    const nlohmann::json doc = nlohmann::json::parse(ReadTextFile(out));
    EXPECT_EQ(doc["kind"], kind);
    EXPECT_EQ(doc["n_frames"].get<int>(), 63);
    EXPECT_EQ(doc["frames"].size(),
              doc["dim"].get<std::size_t>() * doc["n_frames"].get<std::size_t>());
  }
  EXPECT_EQ(Invoke({"features", w, "cqt", work.File("x.json")}).code, kExitUsage);
}

TEST(CliManifestTest, ValidateDefaultAndBroken) {
  const CliRun r = Invoke({"validate-manifest"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("comparison pairs: 105"), std::string::npos);
  EXPECT_NE(r.out.find("audio files per (model, seed): 180"), std::string::npos);

  testing::TempDir dir("vm");
  WriteTextFile(dir.File("bad.json"),
                R"({"schema":"manifest/1","groups":[{"id":"is01","category":"IS",)"
                R"("template":"","variants":[{"id":"a","text":"a","level":1},)"
                R"({"id":"b","text":"b","level":2},{"id":"c","text":"c","level":2},)"
                R"({"id":"d","text":"d","level":4}]}]})");
  const CliRun bad = Invoke({"validate-manifest", dir.File("bad.json")});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_NE(bad.err.find("is01"), std::string::npos);
  WriteTextFile(dir.File("syntax.json"), "{");
  EXPECT_EQ(Invoke({"validate-manifest", dir.File("syntax.json")}).code, kExitInput);
}

TEST(RunConfigTest, Invariants) {
  RunConfig c;
  c.audio_root = "/tmp";
  EXPECT_THROW(c.Validate(), ArgumentError);
  c.models = {"m"};
  EXPECT_NO_THROW(c.Validate());
  c.seeds.clear();
  EXPECT_THROW(c.Validate(), ArgumentError);
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(ArgumentError("x")), kExitUsage);
  EXPECT_EQ(ExitCodeFor(ConfigError("x")), kExitUsage);
  EXPECT_EQ(ExitCodeFor(IoError("x")), kExitInput);
  EXPECT_EQ(ExitCodeFor(FormatError("x")), kExitInput);
  EXPECT_EQ(ExitCodeFor(SchemaError("x")), kExitInput);
  EXPECT_EQ(ExitCodeFor(ValidationError("x")), kExitValidation);
  EXPECT_EQ(ExitCodeFor(InsufficientDataError("x")), kExitValidation);
}

}  // namespace
}  // namespace tafrag
