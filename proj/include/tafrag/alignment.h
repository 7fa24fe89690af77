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

#ifndef TAFRAG_ALIGNMENT_H_
#define TAFRAG_ALIGNMENT_H_

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tafrag/audio_io.h"
#include "tafrag/features.h"
#include "tafrag/spectral.h"

namespace tafrag {

enum class LocalCost { kEuclidean, kCosineDistance };

// Euclidean distance between two frames.
template <typename DerivedA, typename DerivedB>
double EuclideanFrameCost(const Eigen::MatrixBase<DerivedA>& x,
                          const Eigen::MatrixBase<DerivedB>& y) {
  return (x - y).norm();
}

// 1 - cos(x, y). An all-zero frame is at distance 0 from another all-zero
// frame and at distance 1 from anything else.
template <typename DerivedA, typename DerivedB>
double CosineFrameCost(const Eigen::MatrixBase<DerivedA>& x,
                       const Eigen::MatrixBase<DerivedB>& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return (nx == 0.0 && ny == 0.0) ? 0.0 : 1.0;
  // Equals 1 - cos, but is exactly zero for identical directions.
  return std::min(2.0, 0.5 * (x / nx - y / ny).squaredNorm());
}

// 1-based (i, j) index pairs from (1, 1) to (n, m).
struct WarpingPath {
  std::vector<std::pair<int, int>> steps;

  std::size_t length() const { return steps.size(); }
};

// True when the path starts at (1,1), ends at (n,m) and each step advances
// i and/or j by exactly one.
bool IsValidWarpingPath(const WarpingPath& path, int n, int m);

struct DtwResult {
  double total_cost = 0.0;
  double normalized_cost = 0.0;
  WarpingPath path;
  LocalCost local_cost = LocalCost::kEuclidean;
};

struct DtwOptions {
  LocalCost local_cost = LocalCost::kEuclidean;
  // Sakoe-Chiba half-width in frames; widened to |n - m| when narrower so
  // the end cell stays reachable. nullopt means unconstrained.
  std::optional<int> band;
};

// Pairwise local cost matrix [n x m] between the columns of x and y.
Eigen::MatrixXd LocalCostMatrix(const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y, LocalCost kind);

// Exact DP minimum over warping paths with steps (1,0), (0,1), (1,1).
// Backtracking prefers the diagonal, then (i-1, j), then (i, j-1) on ties.
DtwResult Dtw(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
              const DtwOptions& options = {});

DtwResult Dtw(const FeatureSequence& x, const FeatureSequence& y,
              const DtwOptions& options = {});

// Total cost only, using two DP rows.
double DtwTotalCost(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                    const DtwOptions& options = {});

// log-Mel -> MFCC -> Euclidean DTW, path-normalized. Inputs must already
// share a sample rate.
double MfccDtwCost(const AudioBuffer& a, const AudioBuffer& b,
                   const SpectralConfig& config = {},
                   std::optional<int> band = std::nullopt);

// Chroma -> cosine-distance DTW, path-normalized; lies in [0, 2].
double ChromaDtwCost(const AudioBuffer& a, const AudioBuffer& b,
                     const SpectralConfig& config = {},
                     std::optional<int> band = std::nullopt);

}  // namespace tafrag

#endif  // TAFRAG_ALIGNMENT_H_
