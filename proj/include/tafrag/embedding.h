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

#ifndef TAFRAG_EMBEDDING_H_
#define TAFRAG_EMBEDDING_H_

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "tafrag/errors.h"

namespace tafrag {

inline constexpr double kUnitNormTolerance = 1e-6;

// Audio embedding loaded from a sidecar file. When `normalized` is set the
// vector has unit L2 norm within kUnitNormTolerance.
struct EmbeddingVector {
  Eigen::VectorXd values;
  bool normalized = false;
  std::string source;

  Eigen::Index dim() const { return values.size(); }
};

enum class EmbeddingLoadMode {
  kRenormalize,  // rescale off-unit vectors to unit norm
  kStrict,       // reject off-unit vectors with ValidationError
};

// Parses an `emb/1` sidecar document:
//   {"schema":"emb/1","dim":<int>,"normalized":<bool>,"source":<string>,
//    "values":[<numbers>]}
EmbeddingVector ParseEmbedding(const std::string& json_text,
                               EmbeddingLoadMode mode =
                                   EmbeddingLoadMode::kRenormalize,
                               const std::string& origin = "<memory>");

EmbeddingVector LoadEmbedding(const std::string& path,
                              EmbeddingLoadMode mode =
                                  EmbeddingLoadMode::kRenormalize);

std::string SerializeEmbedding(const EmbeddingVector& embedding);
void WriteEmbedding(const std::string& path, const EmbeddingVector& embedding);

// `<dir>/<stem>.wav` -> `<dir>/<stem>.emb.json`.
std::string SidecarPathFor(const std::string& wav_path);

// z1.z2 / (|z1| |z2|), clamped to [-1, 1].
template <typename DerivedA, typename DerivedB>
double CosineSimilarity(const Eigen::MatrixBase<DerivedA>& a,
                        const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("cosine similarity: dimensions differ");
  }
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) {
    throw DegenerateEmbeddingError("cosine similarity: zero vector");
  }
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

template <typename DerivedA, typename DerivedB>
double L2Distance(const Eigen::MatrixBase<DerivedA>& a,
                  const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("L2 distance: dimensions differ");
  }
  return (a - b).norm();
}

inline double CosineSimilarity(const EmbeddingVector& a,
                               const EmbeddingVector& b) {
  return CosineSimilarity(a.values, b.values);
}

inline double L2Distance(const EmbeddingVector& a, const EmbeddingVector& b) {
  return L2Distance(a.values, b.values);
}

}  // namespace tafrag

#endif  // TAFRAG_EMBEDDING_H_
