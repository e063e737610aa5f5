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

#include "vrcloak/presets.hpp"

#include <map>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

// Arm ratio is carried as arm_r / wingspan. The published bounds describe the
// right/left arm-length ratio in [0.95, 1.05]; mapped through r = rho/(1+rho).
constexpr double kArmRatioLower = 0.95 / 1.95;
constexpr double kArmRatioUpper = 1.05 / 2.05;

const std::map<Feature, AttributePreset> kAttributePresets = {
    {Feature::height, {1.496, 1.826, {5, 3, 1}}},
    {Feature::ipd, {55.696, 71.024, {5, 3, 1}}},
    {Feature::pitch, {85, 255, {6, 1, 0.1}}},
    {Feature::depth, {0, 0.913, {5, 3, 1}}},
    {Feature::wingspan, {1.556, 1.899, {3, 1, 0.5}}},
    {Feature::arm_ratio, {kArmRatioLower, kArmRatioUpper, {3, 1, 0.5}}},
    {Feature::room, {0, 5, {3, 1, 0.1}}},
    {Feature::handedness, {0, 1, {1.28, 0.88, 0.73}}},
};

const std::map<Feature, ClampPreset> kClampPresets = {
    {Feature::latency_geo, {{25, 30, 50}}},    // ms
    {Feature::reaction_time, {{10, 20, 100}}}, // ms
    {Feature::rate_clamp, {{90, 72, 60}}},     // Hz
};

const std::map<Feature, std::string> kFeatureNames = {
    {Feature::height, "height"},
    {Feature::depth, "depth"},
    {Feature::wingspan, "wingspan"},
    {Feature::arm_ratio, "arm_ratio"},
    {Feature::room, "room"},
    {Feature::ipd, "ipd"},
    {Feature::pitch, "pitch"},
    {Feature::handedness, "handedness"},
    {Feature::latency_geo, "latency_geo"},
    {Feature::reaction_time, "reaction_time"},
    {Feature::rate_clamp, "rate_clamp"},
};

const std::map<PrivacyLevel, std::string> kLevelNames = {
    {PrivacyLevel::off, "off"},
    {PrivacyLevel::low, "low"},
    {PrivacyLevel::medium, "medium"},
    {PrivacyLevel::high, "high"},
};

int level_index(PrivacyLevel level) {
  switch (level) {
    case PrivacyLevel::low: return 0;
    case PrivacyLevel::medium: return 1;
    case PrivacyLevel::high: return 2;
    case PrivacyLevel::off: break;
  }
  throw ValidationError("privacy level 'off' has no preset value");
}

}  // namespace

const AttributePreset& preset_for(Feature f) {
  auto it = kAttributePresets.find(f);
  if (it == kAttributePresets.end()) {
    throw ValidationError("feature has no epsilon preset: " + to_string(f));
  }
  return it->second;
}

const ClampPreset& clamp_preset_for(Feature f) {
  auto it = kClampPresets.find(f);
  if (it == kClampPresets.end()) {
    throw ValidationError("feature has no clamp preset: " + to_string(f));
  }
  return it->second;
}

double preset_epsilon(Feature f, PrivacyLevel level) {
  return preset_for(f).epsilon[static_cast<std::size_t>(level_index(level))];
}

double preset_clamp(Feature f, PrivacyLevel level) {
  return clamp_preset_for(f).value[static_cast<std::size_t>(level_index(level))];
}

bool is_clamp_feature(Feature f) {
  return f == Feature::latency_geo || f == Feature::reaction_time || f == Feature::rate_clamp;
}

bool consumes_epsilon(Feature f) { return !is_clamp_feature(f); }

const std::string& to_string(Feature f) { return kFeatureNames.at(f); }

const std::string& to_string(PrivacyLevel level) { return kLevelNames.at(level); }

Feature feature_from_string(const std::string& name) {
  for (const auto& [f, n] : kFeatureNames) {
    if (n == name) return f;
  }
  throw ValidationError("unknown feature: " + name);
}

PrivacyLevel level_from_string(const std::string& name) {
  for (const auto& [l, n] : kLevelNames) {
    if (n == name) return l;
  }
  throw ValidationError("unknown privacy level: " + name);
}

}  // namespace vrcloak
