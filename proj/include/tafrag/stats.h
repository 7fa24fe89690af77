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

#ifndef TAFRAG_STATS_H_
#define TAFRAG_STATS_H_

#include <map>
#include <optional>
#include <span>
#include <string_view>

namespace tafrag {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double RegularizedIncompleteBeta(double a, double b, double x);

// Two-sided Student-t tail probability P(|T| >= |t|) at `df` degrees of
// freedom. Throws ArgumentError for df < 1.
double StudentTTwoSidedP(double t, double df);

// The t > 0 with StudentTTwoSidedP(t, df) == alpha.
double StudentTCritical(double alpha, double df);

enum class EffectSize { kNegligible, kSmall, kMedium, kLarge };

// |dz| < 0.2 negligible, < 0.5 small, < 0.8 medium, otherwise large.
EffectSize ClassifyEffectSize(double dz);
std::string_view EffectSizeName(EffectSize size);

inline constexpr double kModerateStabilityThreshold = 0.60;
inline constexpr double kStrongEquivalenceThreshold = 0.80;

struct PairedTestResult {
  int n = 0;
  std::optional<double> mean_a;
  std::optional<double> mean_b;
  double delta = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double t = 0.0;
  int df = 0;
  double p = 1.0;
  double dz = 0.0;
  EffectSize dz_label = EffectSize::kNegligible;
  // Set when every difference is identical (t is 0 or infinite).
  bool degenerate = false;
};

// Paired t-test on per-pair differences. Throws InsufficientDataError for
// fewer than two differences.
PairedTestResult PairedTTest(std::span<const double> diffs,
                             double confidence = 0.95);

// Same test on differences b[i] - a[i]; also reports the condition means.
PairedTestResult PairedTTest(std::span<const double> a,
                             std::span<const double> b,
                             double confidence = 0.95);

struct SeedStability {
  double range = 0.0;         // max - min of the per-seed means
  double range_points = 0.0;  // range * 100, in percentage points
  double min_mean = 0.0;
  double max_mean = 0.0;
};

// Throws InsufficientDataError for fewer than two seeds.
SeedStability SeedStabilityOf(const std::map<long long, double>& per_seed_means);

}  // namespace tafrag

#endif  // TAFRAG_STATS_H_
