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

#ifndef VRCLOAK_STATS_HPP_
#define VRCLOAK_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vrcloak/random.hpp"

namespace vrcloak {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // sample variance (n-1)
double stddev(std::span<const double> xs);
double median(std::vector<double> xs);

// Linear-interpolation percentile, p in [0,1].
double percentile(std::vector<double> xs, double p);

// Coefficient of determination of `estimate` as a direct prediction of
// `truth`: 1 - SS_res / SS_tot. Can be negative when the estimates are worse
// than predicting the mean.
double r_squared(std::span<const double> truth, std::span<const double> estimate);

double autocorrelation_lag1(std::span<const double> xs);

struct ConfidenceInterval {
  double lo = 0;
  double hi = 0;
};

// Percentile bootstrap over indices [0, n): `statistic` is evaluated on each
// resample. Deterministic under the supplied RandomSource.
ConfidenceInterval bootstrap_ci(std::size_t n, int resamples, double confidence, RandomSource& rng,
                                const std::function<double(std::span<const std::size_t>)>& statistic);

}  // namespace vrcloak

#endif  // VRCLOAK_STATS_HPP_
