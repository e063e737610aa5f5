// Copyright 2026 The vrcloak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vrcloak/stats.hpp"

#include <algorithm>
#include <cmath>

#include "vrcloak/errors.hpp"

namespace vrcloak {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("mean of empty sample");
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw ValidationError("variance needs at least 2 samples");
  double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double stddev(std::span<const double> xs) { return std::sqrt(variance(xs)); }

double median(std::vector<double> xs) { return percentile(std::move(xs), 0.5); }

double percentile(std::vector<double> xs, double p) {
  if (xs.empty()) throw ValidationError("percentile of empty sample");
  if (!(p >= 0 && p <= 1)) throw ValidationError("percentile p must be in [0,1]");
  std::sort(xs.begin(), xs.end());
  double rank = p * static_cast<double>(xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= xs.size()) return xs.back();
  double frac = rank - static_cast<double>(lo);
  return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
}

double r_squared(std::span<const double> truth, std::span<const double> estimate) {
  if (truth.size() != estimate.size() || truth.size() < 2) {
    throw ValidationError("r_squared needs two equally sized samples of >= 2");
  }
  double m = mean(truth);
  double ss_res = 0;
  double ss_tot = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_res += (truth[i] - estimate[i]) * (truth[i] - estimate[i]);
    ss_tot += (truth[i] - m) * (truth[i] - m);
  }
  if (ss_tot == 0) throw ValidationError("r_squared undefined for constant truth");
  return 1.0 - ss_res / ss_tot;
}

double autocorrelation_lag1(std::span<const double> xs) {
  if (xs.size() < 3) throw ValidationError("autocorrelation needs at least 3 samples");
  double m = mean(xs);
  double num = 0;
  double den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    den += (xs[i] - m) * (xs[i] - m);
    if (i + 1 < xs.size()) num += (xs[i] - m) * (xs[i + 1] - m);
  }
  if (den == 0) return 0;
  return num / den;
}

ConfidenceInterval bootstrap_ci(std::size_t n, int resamples, double confidence, RandomSource& rng,
                                const std::function<double(std::span<const std::size_t>)>& statistic) {
  if (n == 0) throw ValidationError("bootstrap over empty sample");
  std::vector<double> stats;
  stats.reserve(static_cast<std::size_t>(resamples));
  std::vector<std::size_t> idx(n);
  for (int r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      idx[i] = static_cast<std::size_t>(rng.next_u64() % n);
    }
    stats.push_back(statistic(idx));
  }
  double alpha = (1.0 - confidence) / 2.0;
  ConfidenceInterval ci;
  ci.lo = percentile(stats, alpha);
  ci.hi = percentile(std::move(stats), 1.0 - alpha);
  return ci;
}

}  // namespace vrcloak
