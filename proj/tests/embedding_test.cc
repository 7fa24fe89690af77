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

#include "tafrag/embedding.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tafrag/report.h"
#include "test_util.h"

namespace tafrag {
namespace {

TEST(ParseEmbeddingTest, UnitVector) {
  const EmbeddingVector e = ParseEmbedding(
      R"({"schema":"emb/1","dim":3,"normalized":true,"source":"t","values":[1,0,0]})");
  EXPECT_EQ(e.dim(), 3);
  EXPECT_TRUE(e.normalized);
  EXPECT_EQ(e.values, Eigen::Vector3d(1, 0, 0));
  EXPECT_EQ(e.source, "t");
}

TEST(ParseEmbeddingTest, RenormalizesByDefault) {
  const EmbeddingVector e = ParseEmbedding(
      R"({"schema":"emb/1","dim":3,"normalized":false,"source":"t","values":[2,0,0]})");
  EXPECT_EQ(e.values, Eigen::Vector3d(1, 0, 0));
  EXPECT_TRUE(e.normalized);
}

TEST(ParseEmbeddingTest, StrictModeRejectsOffUnit) {
  EXPECT_THROW(
      ParseEmbedding(
          R"({"schema":"emb/1","dim":3,"normalized":false,"source":"t","values":[2,0,0]})",
          EmbeddingLoadMode::kStrict),
      ValidationError);
  EXPECT_NO_THROW(ParseEmbedding(
      R"({"schema":"emb/1","dim":2,"normalized":true,"source":"t","values":[0.6,0.8]})",
      EmbeddingLoadMode::kStrict));
}

TEST(ParseEmbeddingTest, SchemaErrors) {
  EXPECT_THROW(
      ParseEmbedding(
          R"({"schema":"emb/1","dim":4,"normalized":true,"source":"t","values":[1,0,0]})"),
      SchemaError);
  EXPECT_THROW(
      ParseEmbedding(
          R"({"schema":"emb/2","dim":1,"normalized":true,"source":"t","values":[1]})"),
      SchemaError);
  EXPECT_THROW(
      ParseEmbedding(R"({"schema":"emb/1","dim":1,"normalized":true,"values":[1]})"),
      SchemaError);
  EXPECT_THROW(
      ParseEmbedding(
          R"({"schema":"emb/1","dim":1,"normalized":true,"source":"t","values":["x"]})"),
      SchemaError);
  EXPECT_THROW(
      ParseEmbedding(
          R"({"schema":"emb/1","dim":1,"normalized":true,"source":"t","values":[1],"extra":0})"),
      SchemaError);
  EXPECT_THROW(ParseEmbedding("{not json"), ParseError);
  EXPECT_THROW(
      ParseEmbedding(
          R"({"schema":"emb/1","dim":2,"normalized":true,"source":"t","values":[0,0]})"),
      DegenerateEmbeddingError);
}

TEST(EmbeddingFileTest, WriteLoadRoundTripAndSidecarName) {
  testing::TempDir dir("emb");
  EmbeddingVector e;
  e.values = Eigen::Vector4d(0.5, -0.5, 0.5, 0.5);
  e.normalized = true;
  e.source = "unit";
  const std::string path = SidecarPathFor(dir.File("clip.wav"));
  EXPECT_EQ(path, dir.File("clip.emb.json"));
  WriteEmbedding(path, e);
  const EmbeddingVector back = LoadEmbedding(path, EmbeddingLoadMode::kStrict);
  EXPECT_EQ(back.values, e.values);
  EXPECT_EQ(back.source, "unit");
  EXPECT_THROW(LoadEmbedding(dir.File("missing.emb.json")), IoError);
}

TEST(SimilarityTest, Examples) {
  const Eigen::Vector3d z(0.3, -0.4, 1.2);
  EXPECT_NEAR(CosineSimilarity(z, z), 1.0, 1e-15);
  EXPECT_EQ(L2Distance(z, z), 0.0);
  const Eigen::Vector2d e1(1, 0), e2(0, 1);
  EXPECT_EQ(CosineSimilarity(e1, e2), 0.0);
  EXPECT_NEAR(L2Distance(e1, e2), std::sqrt(2.0), 1e-15);
  const Eigen::Vector2d at60(0.5, std::sqrt(3.0) / 2.0);
  EXPECT_NEAR(CosineSimilarity(e1, at60), 0.5, 1e-15);
  EXPECT_NEAR(L2Distance(e1, at60), 1.0, 1e-15);
}

TEST(SimilarityTest, ClampedAndChecked) {
  const Eigen::Vector3d z(1e-3, 2e-3, 3e-3);
  EXPECT_LE(CosineSimilarity(z, z), 1.0);
  EXPECT_GE(CosineSimilarity(z, -z), -1.0);
  const Eigen::VectorXd two = Eigen::Vector2d(1, 0);
  const Eigen::VectorXd three = Eigen::Vector3d(1, 0, 0);
  EXPECT_THROW(CosineSimilarity(two, three), PreconditionError);
  EXPECT_THROW(L2Distance(two, three), PreconditionError);
  EXPECT_THROW(CosineSimilarity(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0)),
               DegenerateEmbeddingError);
}

TEST(SimilarityTest, UnitVectorIdentityAndScaleInvariance) {
  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int d : {4, 64, 512}) {
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd a(d), b(d);
      for (int i = 0; i < d; ++i) {
        a[i] = g(rng);
        b[i] = g(rng);
      }
      const double cos_raw = CosineSimilarity(a, b);
      const double alpha = scale(rng), beta = scale(rng);
      EXPECT_NEAR(CosineSimilarity((alpha * a).eval(), (beta * b).eval()),
                  cos_raw, 1e-9);
      a.normalize();
      b.normalize();
      EXPECT_NEAR(L2Distance(a, b),
                  std::sqrt(2.0 * (1.0 - CosineSimilarity(a, b))), 1e-6);
    }
  }
}

TEST(SimilarityTest, PairIdentityDoesNotCommuteWithAveraging) {
  // Two pairs with cosines 0 and 1: mean cos 0.5, mean L2 sqrt(2)/2.
  const Eigen::Vector2d e1(1, 0), e2(0, 1);
  const double mean_l2 = 0.5 * (L2Distance(e1, e2) + L2Distance(e1, e1));
  const double mean_cos = 0.5 * (CosineSimilarity(e1, e2) + CosineSimilarity(e1, e1));
  EXPECT_NEAR(mean_l2, std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(std::sqrt(2.0 * (1.0 - mean_cos)), 1.0, 1e-15);
}

}  // namespace
}  // namespace tafrag
