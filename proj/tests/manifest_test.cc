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

#include "tafrag/manifest.h"

#include <gtest/gtest.h>

#include "tafrag/errors.h"
#include "test_util.h"

namespace tafrag {
namespace {

PerturbationGroup Pair(const std::string& id, Category c) {
  return {id, c, "Generate music that feels {}",
          {{"a", "Generate music that feels calm", std::nullopt},
           {"b", "Generate music that feels quiet", std::nullopt}}};
}

PerturbationGroup Chain(const std::string& id) {
  PerturbationGroup g{id, Category::kIs, "Generate music that feels {}", {}};
  const char* words[] = {"slightly-worried", "concerned", "afraid", "terrified"};
  for (int k = 0; k < 4; ++k) {
    g.variants.push_back({words[k], std::string("Generate music that feels ") + words[k], k + 1});
  }
  return g;
}

std::string ValidationMessage(const std::vector<PerturbationGroup>& groups) {
  try {
    ValidateGroups(groups);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(DefaultManifestTest, CountsPerCategory) {
  const Manifest m = LoadManifest(TAFRAG_DEFAULT_MANIFEST);
  int mls = 0, is = 0, sr = 0;
  for (const PerturbationGroup& g : m.groups) {
    mls += g.category == Category::kMls;
    is += g.category == Category::kIs;
    sr += g.category == Category::kSr;
  }
  EXPECT_EQ(mls, 30);
  EXPECT_EQ(is, 15);
  EXPECT_EQ(sr, 30);
  EXPECT_EQ(EnumeratePairs(m.groups).size(), 105u);
  EXPECT_EQ(CorpusFileCount(m.groups), 180u);
  EXPECT_TRUE(m.warnings.empty());
}

TEST(ValidateGroupsTest, IntensityLevelsMustStrictlyIncrease) {
  PerturbationGroup g = Chain("is01");
  g.variants[2].level = 2;
  g.variants[3].level = 4;
  const std::string msg = ValidationMessage({g});
  EXPECT_NE(msg.find("is01"), std::string::npos);
}

TEST(ValidateGroupsTest, ErrorsNameTheGroup) {
  PerturbationGroup missing_level = Chain("is02");
  missing_level.variants[0].level.reset();
  EXPECT_NE(ValidationMessage({missing_level}).find("is02"), std::string::npos);

  PerturbationGroup extra_level = Pair("mls07", Category::kMls);
  extra_level.variants[0].level = 1;
  EXPECT_NE(ValidationMessage({extra_level}).find("mls07"), std::string::npos);

  PerturbationGroup three = Pair("sr03", Category::kSr);
  three.variants.push_back({"c", "x", std::nullopt});
  EXPECT_NE(ValidationMessage({three}).find("sr03"), std::string::npos);

  PerturbationGroup dup_variant = Pair("mls08", Category::kMls);
  dup_variant.variants[1].id = "a";
  EXPECT_NE(ValidationMessage({dup_variant}).find("mls08"), std::string::npos);

  EXPECT_NE(ValidationMessage({Pair("g", Category::kMls), Pair("g", Category::kSr)})
                .find("duplicate group id"),
            std::string::npos);

  PerturbationGroup bad_id = Pair("a__b", Category::kMls);
  EXPECT_FALSE(ValidationMessage({bad_id}).empty());
  PerturbationGroup empty_text = Pair("mls09", Category::kMls);
  empty_text.variants[0].text.clear();
  EXPECT_FALSE(ValidationMessage({empty_text}).empty());
}

TEST(ParseManifestTest, EmptyGroupsIsValidWithWarning) {
  const Manifest m = ParseManifest(R"({"schema":"manifest/1","groups":[]})");
  EXPECT_TRUE(m.groups.empty());
  EXPECT_EQ(m.warnings.size(), 1u);
  EXPECT_TRUE(EnumeratePairs(m.groups).empty());
}

TEST(ParseManifestTest, SchemaAndSyntaxErrors) {
  EXPECT_THROW(ParseManifest("[1,2"), ParseError);
  EXPECT_THROW(ParseManifest(R"({"schema":"manifest/0","groups":[]})"), SchemaError);
  EXPECT_THROW(ParseManifest(R"({"schema":"manifest/1"})"), SchemaError);
  EXPECT_THROW(
      ParseManifest(
          R"({"schema":"manifest/1","groups":[{"id":"x","category":"XX","template":"","variants":[]}]})"),
      ValidationError);
}

TEST(ParseManifestTest, SerializeRoundTrip) {
  const std::vector<PerturbationGroup> groups = {Pair("mls01", Category::kMls),
                                                 Chain("is01"),
                                                 Pair("sr01", Category::kSr)};
  const Manifest back = ParseManifest(SerializeManifest(groups));
  ASSERT_EQ(back.groups.size(), 3u);
  EXPECT_EQ(EnumeratePairs(back.groups), EnumeratePairs(groups));
  EXPECT_EQ(back.groups[1].variants[3].level, 4);
  EXPECT_FALSE(back.groups[0].variants[0].level.has_value());
}

TEST(EnumeratePairsTest, AdjacentLevelsAndOrder) {
  const auto one_is = EnumeratePairs({Chain("is01")});
  ASSERT_EQ(one_is.size(), 3u);
  EXPECT_EQ(one_is[0].variant_a, "slightly-worried");
  EXPECT_EQ(one_is[0].variant_b, "concerned");
  EXPECT_EQ(one_is[2].variant_a, "afraid");
  EXPECT_EQ(one_is[2].variant_b, "terrified");
  EXPECT_EQ(EnumeratePairs({Pair("m", Category::kMls)}).size(), 1u);
}

TEST(EnumeratePairsTest, CountFormulaAndDeterminism) {
  std::vector<PerturbationGroup> groups;
  for (int i = 0; i < 7; ++i) {
    groups.push_back(Pair("m" + std::to_string(i), Category::kMls));
    if (i % 2 == 0) groups.push_back(Chain("i" + std::to_string(i)));
    if (i % 3 == 0) groups.push_back(Pair("s" + std::to_string(i), Category::kSr));
    ValidateGroups(groups);
    std::size_t mls = 0, is = 0, sr = 0;
    for (const auto& g : groups) {
      mls += g.category == Category::kMls;
      is += g.category == Category::kIs;
      sr += g.category == Category::kSr;
    }
    const auto pairs = EnumeratePairs(groups);
    EXPECT_EQ(pairs.size(), mls + 3 * is + sr);
    EXPECT_EQ(pairs, EnumeratePairs(groups));
    for (const ComparisonPair& p : pairs) {
      EXPECT_NE(p.variant_a, p.variant_b);
    }
  }
}

TEST(CorpusPathTest, Layout) {
  EXPECT_EQ(CorpusWavPath("/corpus", "musicgen-small", 0, "mls01", "calm"),
            "/corpus/musicgen-small/0/mls01__calm.wav");
}

}  // namespace
}  // namespace tafrag
