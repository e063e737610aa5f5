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
// Built-in per-attribute privacy presets: population bounds plus the
// epsilon (or clamp) selected for each privacy level. Versioned so sweeps
// against older tables remain reproducible.

#ifndef VRCLOAK_PRESETS_HPP_
#define VRCLOAK_PRESETS_HPP_

#include <array>
#include <string>
#include <vector>

namespace vrcloak {

enum class PrivacyLevel { off, low, medium, high };

enum class Feature {
  height,
  depth,
  wingspan,
  arm_ratio,
  room,
  ipd,
  pitch,
  handedness,
  latency_geo,
  reaction_time,
  rate_clamp,
};

inline constexpr std::array<Feature, 11> kAllFeatures = {
    Feature::height,     Feature::depth,         Feature::wingspan,
    Feature::arm_ratio,  Feature::room,          Feature::ipd,
    Feature::pitch,      Feature::handedness,    Feature::latency_geo,
    Feature::reaction_time, Feature::rate_clamp,
};

inline constexpr const char* kPresetsVersion = "1";

// Epsilon-consuming attribute preset: bounds and per-level epsilon
// (index 0 = low, 1 = medium, 2 = high).
struct AttributePreset {
  double lower = 0;
  double upper = 0;
  std::array<double, 3> epsilon{};
};

// Non-DP network defenses: per-level clamp values (low, medium, high).
struct ClampPreset {
  std::array<double, 3> value{};
};

// Preset lookup for epsilon-consuming features (height, depth, wingspan,
// arm_ratio, room, ipd, pitch, handedness). Throws for clamp features.
const AttributePreset& preset_for(Feature f);

// Clamp lookup for latency_geo (ms), reaction_time (ms), rate_clamp (Hz).
const ClampPreset& clamp_preset_for(Feature f);

// Preset epsilon / clamp value at a level; level must not be `off`.
double preset_epsilon(Feature f, PrivacyLevel level);
double preset_clamp(Feature f, PrivacyLevel level);

bool is_clamp_feature(Feature f);
bool consumes_epsilon(Feature f);

const std::string& to_string(Feature f);
const std::string& to_string(PrivacyLevel level);
Feature feature_from_string(const std::string& name);
PrivacyLevel level_from_string(const std::string& name);

}  // namespace vrcloak

#endif  // VRCLOAK_PRESETS_HPP_
