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
//
// Local differential privacy primitives: bounded Laplace sampling for
// continuous attributes, randomized response for Boolean attributes, and
// sequential-composition budget accounting.

#ifndef VRCLOAK_MECHANISMS_HPP_
#define VRCLOAK_MECHANISMS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "vrcloak/random.hpp"

namespace vrcloak {

// Privacy parameters for one attribute. The sensitivity covers the entire
// bounded range: delta = upper - lower.
struct PrivacyParams {
  double epsilon = 0;
  double lower = 0;
  double upper = 0;
  double sensitivity = 0;

  static PrivacyParams for_bounds(double epsilon, double lower, double upper);

  // Throws ValidationError unless epsilon > 0, lower < upper, and
  // sensitivity == upper - lower.
  void validate() const;
};

// Optional counters for the rejection sampler.
struct BoundedLaplaceStats {
  long redraws = 0;    // samples rejected for landing out of bounds
  long fallbacks = 0;  // redraw cap reached; last sample clamped instead
};

// Max redraws before the sampler clamps the last sample. Hitting the cap is
// statistically negligible because the noise is centered inside the bounds.
inline constexpr int kBoundedLaplaceMaxRedraws = 1000;

// Bounded Laplace mechanism. Clamps `value` into [lower, upper], adds
// Laplace(sensitivity/epsilon) noise, and redraws until the sample lies in
// [lower, upper]. Outputs are snapped to a grid of 2^-32 * sensitivity as a
// finite-float mitigation; the result is always within bounds.
//
// Throws ValidationError for non-finite `value` (invalid input) or bad
// params (invalid params).
double bounded_laplace(double value, const PrivacyParams& params, RandomSource& rng,
                       BoundedLaplaceStats* stats = nullptr);

// Test hook: same clamp/bounds pipeline with `noise` injected in place of the
// Laplace draw (out-of-bounds results are clamped since there is nothing to
// redraw). Production code paths construct no such call.
double bounded_laplace_injected(double value, const PrivacyParams& params, double noise);

// Warner's randomized response. With probability `bias` answers truthfully;
// otherwise answers a fair coin. Throws ValidationError if bias is outside
// [0,1].
bool randomized_response(bool truth, double bias, RandomSource& rng);

// First-coin bias p such that the truthful-output probability
// q = p + (1-p)/2 satisfies epsilon = ln(q / (1-q)). Closed form:
// p = (e^eps - 1) / (e^eps + 1). Inverse of rr_epsilon_for_bias.
double rr_bias_for_epsilon(double epsilon);

// Forward map: epsilon = ln(q / (1-q)) with q = p + (1-p)/2.
double rr_epsilon_for_bias(double bias);

// Per-session record of epsilon consumed per attribute. Sequential
// composition: the total budget is the sum of the entries.
struct BudgetLedger {
  std::vector<std::pair<std::string, double>> entries;

  void add(std::string attribute, double epsilon) {
    entries.emplace_back(std::move(attribute), epsilon);
  }
};

double budget_total(const BudgetLedger& ledger);

}  // namespace vrcloak

#endif  // VRCLOAK_MECHANISMS_HPP_
