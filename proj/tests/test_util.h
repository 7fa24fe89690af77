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

#ifndef TAFRAG_TESTS_TEST_UTIL_H_
#define TAFRAG_TESTS_TEST_UTIL_H_

// Test-only helpers and independent oracles. Nothing here calls into the
// implementation paths it is used to check.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

#include "tafrag/audio_io.h"

namespace tafrag::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tafrag_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string File(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline AudioBuffer Sine(double hz, double sample_rate, Eigen::Index n,
                        double amplitude = 1.0) {
  AudioBuffer b;
  b.sample_rate = sample_rate;
  b.samples.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b.samples[i] =
        amplitude * std::sin(2.0 * std::numbers::pi * hz * i / sample_rate);
  }
  return b;
}

// Sequence of equal-length sine notes.
inline AudioBuffer Melody(const std::vector<double>& hz, double note_s,
                          double sample_rate) {
  const auto per = static_cast<Eigen::Index>(note_s * sample_rate);
  AudioBuffer b;
  b.sample_rate = sample_rate;
  b.samples.resize(per * static_cast<Eigen::Index>(hz.size()));
  for (std::size_t k = 0; k < hz.size(); ++k) {
    for (Eigen::Index i = 0; i < per; ++i) {
      b.samples[static_cast<Eigen::Index>(k) * per + i] =
          0.5 * std::sin(2.0 * std::numbers::pi * hz[k] * i / sample_rate);
    }
  }
  return b;
}

inline AudioBuffer Noise(std::uint32_t seed, double sample_rate,
                         Eigen::Index n, double amplitude = 0.5) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  AudioBuffer b;
  b.sample_rate = sample_rate;
  b.samples.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) b.samples[i] = u(rng);
  return b;
}

inline Eigen::MatrixXd RandomMatrix(std::mt19937& rng, Eigen::Index rows,
                                    Eigen::Index cols, double lo = -1.0,
                                    double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = u(rng);
  }
  return m;
}

// Exhaustive minimum over every monotone, continuous warping path from
// (0,0) to (n-1,m-1). Costs accumulate from the start of the path.
inline double BruteForceDtw(
    const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
    const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>&
        local) {
  const Eigen::Index n = x.cols();
  const Eigen::Index m = y.cols();
  double best = std::numeric_limits<double>::infinity();
  std::function<void(Eigen::Index, Eigen::Index, double)> walk =
      [&](Eigen::Index i, Eigen::Index j, double acc) {
        acc += local(x.col(i), y.col(j));
        if (i == n - 1 && j == m - 1) {
          best = std::min(best, acc);
          return;
        }
        if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc);
        if (i + 1 < n) walk(i + 1, j, acc);
        if (j + 1 < m) walk(i, j + 1, acc);
      };
  walk(0, 0, 0.0);
  return best;
}

// Direct O(n^2) orthonormal DCT-II.
inline std::vector<double> NaiveDct2(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += x[i] * std::cos(std::numbers::pi / static_cast<double>(n) *
                             (static_cast<double>(i) + 0.5) *
                             static_cast<double>(k));
    }
    out[k] = acc * std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
  }
  return out;
}

inline double StudentTDensity(double x, double df) {
  const double log_c = std::lgamma((df + 1.0) / 2.0) -
                       std::lgamma(df / 2.0) -
                       0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_c - (df + 1.0) / 2.0 * std::log1p(x * x / df));
}

// Adaptive Simpson quadrature.
inline double Integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13, int depth = 50) {
  std::function<double(double, double, double, double, double, double, int)>
      step = [&](double lo, double hi, double flo, double fmid, double fhi,
                 double whole, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
      return left + right + (left + right - whole) / 15.0;
    }
    return step(lo, mid, flo, flm, fmid, left, d - 1) +
           step(mid, hi, fmid, frm, fhi, right, d - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return step(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), depth);
}

// Two-sided tail probability by integrating the density over [0, |t|].
inline double QuadratureTwoSidedP(double t, double df) {
  const double body = Integrate(
      [df](double x) { return StudentTDensity(x, df); }, 0.0, std::abs(t));
  return 1.0 - 2.0 * body;
}

// Vector with exactly the requested sample mean and (n-1) standard
// deviation, obtained by affinely rescaling a fixed base vector.
inline std::vector<double> WithMoments(int n, double mean, double sd,
                                       std::uint32_t seed = 7) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> base(n);
  for (double& v : base) v = u(rng);
  double m = 0.0;
  for (double v : base) m += v;
  m /= n;
  double ss = 0.0;
  for (double v : base) ss += (v - m) * (v - m);
  const double s = std::sqrt(ss / (n - 1));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = mean + sd * (base[i] - m) / s;
  return out;
}

// Frames whose analysis window lies entirely inside the signal.
inline std::pair<Eigen::Index, Eigen::Index> InteriorFrames(Eigen::Index len,
                                                            int n_fft,
                                                            int hop) {
  const Eigen::Index first = (n_fft / 2 + hop - 1) / hop;
  const Eigen::Index last = (len - n_fft / 2) / hop;
  return {first, last + 1};
}

inline int ArgmaxRow(const Eigen::VectorXd& column) {
  Eigen::Index idx = 0;
  column.maxCoeff(&idx);
  return static_cast<int>(idx);
}

}  // namespace tafrag::testing

#endif  // TAFRAG_TESTS_TEST_UTIL_H_
