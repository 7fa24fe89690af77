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

#include "tafrag/alignment.h"

#include <cstdlib>
#include <limits>
#include <string>

#include "tafrag/errors.h"

namespace tafrag {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckInputs(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() == 0 || y.cols() == 0) {
    throw PreconditionError("DTW: empty feature sequence");
  }
  if (x.rows() != y.rows()) {
    throw PreconditionError("DTW: feature dimensions differ (" +
                            std::to_string(x.rows()) + " vs " +
                            std::to_string(y.rows()) + ")");
  }
}

int EffectiveBand(const DtwOptions& options, Eigen::Index n, Eigen::Index m) {
  if (!options.band) return -1;
  if (*options.band < 0) throw ArgumentError("DTW band must be >= 0");
  return std::max<int>(*options.band, static_cast<int>(std::abs(n - m)));
}

bool InBand(int band, Eigen::Index i, Eigen::Index j) {
  return band < 0 || std::abs(i - j) <= band;
}

void CheckSameRate(const AudioBuffer& a, const AudioBuffer& b) {
  if (a.sample_rate != b.sample_rate) {
    throw PreconditionError("DTW cost: sample rates differ; resample first");
  }
}

}  // namespace

bool IsValidWarpingPath(const WarpingPath& path, int n, int m) {
  if (path.steps.empty()) return false;
  if (path.steps.front() != std::pair{1, 1}) return false;
  if (path.steps.back() != std::pair{n, m}) return false;
  for (std::size_t k = 1; k < path.steps.size(); ++k) {
    const int di = path.steps[k].first - path.steps[k - 1].first;
    const int dj = path.steps[k].second - path.steps[k - 1].second;
    if (di < 0 || di > 1 || dj < 0 || dj > 1 || (di == 0 && dj == 0)) {
      return false;
    }
  }
  return true;
}

Eigen::MatrixXd LocalCostMatrix(const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& y, LocalCost kind) {
  Eigen::MatrixXd cost(x.cols(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      cost(i, j) = kind == LocalCost::kEuclidean
                       ? EuclideanFrameCost(x.col(i), y.col(j))
                       : CosineFrameCost(x.col(i), y.col(j));
    }
  }
  return cost;
}

DtwResult Dtw(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
              const DtwOptions& options) {
  CheckInputs(x, y);
  const Eigen::Index n = x.cols();
  const Eigen::Index m = y.cols();
  const int band = EffectiveBand(options, n, m);
  const Eigen::MatrixXd cost = LocalCostMatrix(x, y, options.local_cost);

  // acc(i, j) is the best cost of a path ending at 1-based cell (i, j).
  Eigen::MatrixXd acc = Eigen::MatrixXd::Constant(n + 1, m + 1, kInf);
  acc(0, 0) = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    for (Eigen::Index j = 1; j <= m; ++j) {
      if (!InBand(band, i, j)) continue;
      const double best =
          std::min({acc(i - 1, j - 1), acc(i - 1, j), acc(i, j - 1)});
      acc(i, j) = cost(i - 1, j - 1) + best;
    }
  }

  DtwResult result;
  result.local_cost = options.local_cost;
  result.total_cost = acc(n, m);
  Eigen::Index i = n;
  Eigen::Index j = m;
  result.path.steps.emplace_back(static_cast<int>(i), static_cast<int>(j));
  while (i > 1 || j > 1) {
    const double diag = acc(i - 1, j - 1);
    const double up = acc(i - 1, j);
    const double left = acc(i, j - 1);
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
    result.path.steps.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  std::reverse(result.path.steps.begin(), result.path.steps.end());
  result.normalized_cost =
      result.total_cost / static_cast<double>(result.path.length());
  return result;
}

DtwResult Dtw(const FeatureSequence& x, const FeatureSequence& y,
              const DtwOptions& options) {
  return Dtw(x.frames, y.frames, options);
}

double DtwTotalCost(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                    const DtwOptions& options) {
  CheckInputs(x, y);
  const Eigen::Index n = x.cols();
  const Eigen::Index m = y.cols();
  const int band = EffectiveBand(options, n, m);
  Eigen::VectorXd prev = Eigen::VectorXd::Constant(m + 1, kInf);
  Eigen::VectorXd curr(m + 1);
  prev[0] = 0.0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    curr.setConstant(kInf);
    for (Eigen::Index j = 1; j <= m; ++j) {
      if (!InBand(band, i, j)) continue;
      const double local =
          options.local_cost == LocalCost::kEuclidean
              ? EuclideanFrameCost(x.col(i - 1), y.col(j - 1))
              : CosineFrameCost(x.col(i - 1), y.col(j - 1));
      curr[j] = local + std::min({prev[j - 1], prev[j], curr[j - 1]});
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

double MfccDtwCost(const AudioBuffer& a, const AudioBuffer& b,
                   const SpectralConfig& config, std::optional<int> band) {
  CheckSameRate(a, b);
  const FeatureSequence fa = Mfcc(LogMel(a, config));
  const FeatureSequence fb = Mfcc(LogMel(b, config));
  return Dtw(fa, fb, {LocalCost::kEuclidean, band}).normalized_cost;
}

double ChromaDtwCost(const AudioBuffer& a, const AudioBuffer& b,
                     const SpectralConfig& config, std::optional<int> band) {
  CheckSameRate(a, b);
  const FeatureSequence fa = Chroma(a, config);
  const FeatureSequence fb = Chroma(b, config);
  return Dtw(fa, fb, {LocalCost::kCosineDistance, band}).normalized_cost;
}

}  // namespace tafrag
