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

#include "tafrag/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "tafrag/errors.h"

namespace tafrag {
namespace {

constexpr double kCfTolerance = 1e-12;
constexpr int kCfMaxIterations = 10000;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kCfTolerance) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ArgumentError("incomplete beta: shape parameters must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ArgumentError("incomplete beta: x must lie in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast only below the mean; reflect otherwise.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (!(df >= 1.0)) {
    throw ArgumentError("Student t: df must be >= 1, got " +
                        std::to_string(df));
  }
  if (std::isnan(t)) throw ArgumentError("Student t: t is NaN");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return std::clamp(RegularizedIncompleteBeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

double StudentTCritical(double alpha, double df) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ArgumentError("Student t critical value: alpha must be in (0, 1)");
  }
  double lo = 0.0;
  double hi = 1.0;
  while (StudentTTwoSidedP(hi, df) > alpha) {
    lo = hi;
    hi *= 2.0;
  }
  // p is strictly decreasing in t; bisect to machine resolution.
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (StudentTTwoSidedP(mid, df) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

EffectSize ClassifyEffectSize(double dz) {
  const double m = std::abs(dz);
  if (m < 0.2) return EffectSize::kNegligible;
  if (m < 0.5) return EffectSize::kSmall;
  if (m < 0.8) return EffectSize::kMedium;
  return EffectSize::kLarge;
}

std::string_view EffectSizeName(EffectSize size) {
  switch (size) {
    case EffectSize::kNegligible:
      return "negligible";
    case EffectSize::kSmall:
      return "small";
    case EffectSize::kMedium:
      return "medium";
    case EffectSize::kLarge:
      return "large";
  }
  return "?";
}

PairedTestResult PairedTTest(std::span<const double> diffs,
                             double confidence) {
  if (diffs.size() < 2) {
    throw InsufficientDataError("paired t-test needs at least 2 pairs, got " +
                                std::to_string(diffs.size()));
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ArgumentError("confidence level must be in (0, 1)");
  }
  PairedTestResult r;
  r.n = static_cast<int>(diffs.size());
  r.df = r.n - 1;
  const double n = static_cast<double>(r.n);
  r.delta = std::accumulate(diffs.begin(), diffs.end(), 0.0) / n;

  const auto [min_it, max_it] = std::minmax_element(diffs.begin(), diffs.end());
  if (*min_it == *max_it) {
    r.degenerate = true;
    r.delta = *min_it;
    r.ci_low = r.ci_high = r.delta;
    if (r.delta == 0.0) {
      r.t = 0.0;
      r.p = 1.0;
      r.dz = 0.0;
    } else {
      r.t = std::copysign(std::numeric_limits<double>::infinity(), r.delta);
      r.p = 0.0;
      r.dz = r.t;
    }
    r.dz_label = ClassifyEffectSize(r.dz);
    return r;
  }

  double ss = 0.0;
  for (double d : diffs) ss += (d - r.delta) * (d - r.delta);
  const double sd = std::sqrt(ss / (n - 1.0));
  const double se = sd / std::sqrt(n);
  r.t = r.delta / se;
  r.p = StudentTTwoSidedP(r.t, r.df);
  r.dz = r.delta / sd;
  r.dz_label = ClassifyEffectSize(r.dz);
  const double half =
      StudentTCritical(1.0 - confidence, static_cast<double>(r.df)) * se;
  r.ci_low = r.delta - half;
  r.ci_high = r.delta + half;
  return r;
}

PairedTestResult PairedTTest(std::span<const double> a,
                             std::span<const double> b, double confidence) {
  if (a.size() != b.size()) {
    throw PreconditionError("paired t-test: condition sizes differ");
  }
  std::vector<double> diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = b[i] - a[i];
  PairedTestResult r = PairedTTest(diffs, confidence);
  const double n = static_cast<double>(a.size());
  r.mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
  r.mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
  return r;
}

SeedStability SeedStabilityOf(
    const std::map<long long, double>& per_seed_means) {
  if (per_seed_means.size() < 2) {
    throw InsufficientDataError("seed stability needs at least 2 seeds, got " +
                                std::to_string(per_seed_means.size()));
  }
  SeedStability s;
  s.min_mean = std::numeric_limits<double>::infinity();
  s.max_mean = -std::numeric_limits<double>::infinity();
  for (const auto& [seed, mean] : per_seed_means) {
    s.min_mean = std::min(s.min_mean, mean);
    s.max_mean = std::max(s.max_mean, mean);
  }
  s.range = s.max_mean - s.min_mean;
  s.range_points = s.range * 100.0;
  return s;
}

}  // namespace tafrag
