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

#include "vrcloak/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

double laplace_sample(double center, double scale, RandomSource& rng) {
  double u = rng.uniform_open() - 0.5;  // (-0.5, 0.5)
  double sign = u < 0 ? -1.0 : 1.0;
  // Inverse CDF; 1 - 2|u| stays in (0,1] for open-interval draws.
  return center - scale * sign * std::log1p(-2.0 * std::abs(u));
}

// Snap to a grid of 2^-32 * sensitivity anchored at the lower bound, then
// clamp. Mitigates the finite-float attack surface of naive samplers; full
// exactness of the integer-valued sampler is out of scope.
double snap_to_grid(double x, const PrivacyParams& p) {
  double granule = p.sensitivity * 0x1.0p-32;
  double snapped = p.lower + std::round((x - p.lower) / granule) * granule;
  return std::clamp(snapped, p.lower, p.upper);
}

}  // namespace

PrivacyParams PrivacyParams::for_bounds(double epsilon, double lower, double upper) {
  PrivacyParams p;
  p.epsilon = epsilon;
  p.lower = lower;
  p.upper = upper;
  p.sensitivity = upper - lower;
  return p;
}

void PrivacyParams::validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw ValidationError("invalid params: epsilon must be > 0");
  }
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw ValidationError("invalid params: bounds must satisfy lower < upper");
  }
  if (sensitivity != upper - lower) {
    throw ValidationError("invalid params: sensitivity must equal upper - lower");
  }
}

double bounded_laplace(double value, const PrivacyParams& params, RandomSource& rng,
                       BoundedLaplaceStats* stats) {
  if (!std::isfinite(value)) {
    throw ValidationError("invalid input: bounded_laplace value must be finite");
  }
  params.validate();

  // Inputs outside the bounds are clamped to the nearest bound; noise is
  // centered on the (clamped) sensitive value.
  double center = std::clamp(value, params.lower, params.upper);
  double scale = params.sensitivity / params.epsilon;

  double x = center;
  for (int i = 0; i < kBoundedLaplaceMaxRedraws; ++i) {
    x = laplace_sample(center, scale, rng);
    if (x >= params.lower && x <= params.upper) {
      return snap_to_grid(x, params);
    }
    if (stats != nullptr) ++stats->redraws;
  }
  if (stats != nullptr) ++stats->fallbacks;
  return snap_to_grid(std::clamp(x, params.lower, params.upper), params);
}

double bounded_laplace_injected(double value, const PrivacyParams& params, double noise) {
  if (!std::isfinite(value)) {
    throw ValidationError("invalid input: bounded_laplace value must be finite");
  }
  params.validate();
  double center = std::clamp(value, params.lower, params.upper);
  return std::clamp(center + noise, params.lower, params.upper);
}

bool randomized_response(bool truth, double bias, RandomSource& rng) {
  if (!(bias >= 0.0 && bias <= 1.0)) {
    throw ValidationError("invalid params: randomized response bias must be in [0,1]");
  }
  if (rng.uniform_open() <= bias) {
    return truth;
  }
  return rng.uniform_open() <= 0.5;
}

double rr_bias_for_epsilon(double epsilon) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw ValidationError("invalid params: epsilon must be > 0");
  }
  // p = (e^eps - 1) / (e^eps + 1) = tanh(eps / 2)
  return std::tanh(epsilon / 2.0);
}

double rr_epsilon_for_bias(double bias) {
  if (!(bias >= 0.0 && bias < 1.0)) {
    throw ValidationError("invalid params: bias must be in [0,1)");
  }
  double q = bias + (1.0 - bias) / 2.0;
  return std::log(q / (1.0 - q));
}

double budget_total(const BudgetLedger& ledger) {
  double total = 0;
  for (const auto& [name, eps] : ledger.entries) {
    (void)name;
    total += eps;
  }
  return total;
}

}  // namespace vrcloak
