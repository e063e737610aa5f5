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
// Attribute-harvesting and identification attacks, reimplemented at desk
// scale. Estimators are pure over finished streams; on defended sessions
// they recover the session's noisy values, never the truth.

#ifndef VRCLOAK_ADVERSARY_HPP_
#define VRCLOAK_ADVERSARY_HPP_

#include <Eigen/Core>
#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrcloak/telemetry.hpp"

namespace vrcloak {

// One harvested attribute, as emitted by the attack CLI.
struct AttributeEstimate {
  std::string attribute;
  double value = 0;
  std::string unit;
};

enum class HeightMethod { percentile99, max };

// 99th percentile (or max) of the headset y coordinate.
double estimate_height(std::span<const TelemetryFrame> stream,
                       HeightMethod method = HeightMethod::percentile99);

// Maximum observed controller separation in the xz plane.
double estimate_wingspan(std::span<const TelemetryFrame> stream);

// (max - min) of headset x and z: the movement range reveals the play area.
std::pair<double, double> estimate_room(std::span<const TelemetryFrame> stream);

// height_est - lowest headset y.
double estimate_depth(std::span<const TelemetryFrame> stream, double height_est);

// Median eye gap in mm. Throws when no frame carries eyes.
double estimate_ipd(std::span<const TelemetryFrame> stream);

// Median voice pitch in Hz. Throws when no frame carries the channel.
double estimate_pitch(std::span<const TelemetryFrame> stream);

// Majority hand over interaction events; true = right. Throws without events.
bool estimate_handedness(std::span<const TelemetryFrame> stream);

enum class LongerArm { left, right, tie };

// Compares the maximum xz radial reach of each controller from the head;
// differences within 1 mm are a tie.
LongerArm estimate_longer_arm(std::span<const TelemetryFrame> stream);

// Maximum per-hand xz reach from the head, (right, left); building block for
// longer-arm and arm-ratio harvesting.
std::pair<double, double> estimate_arm_extents(std::span<const TelemetryFrame> stream);

// 1000 / median inter-frame gap (ms). Needs >= 2 frames.
double estimate_refresh_rate(std::span<const TelemetryFrame> stream);

// Mean (response - stimulus) over matched pairs, ms. Throws without pairs.
double estimate_reaction(std::span<const TelemetryFrame> stream);

struct GeoAnchor {
  Eigen::Vector2d position_km = Eigen::Vector2d::Zero();
  double rtt_ms = 0;
};

struct GeoEstimate {
  Eigen::Vector2d position_km = Eigen::Vector2d::Zero();
  double rms_residual_ms = 0;
  bool low_confidence = false;  // flat residual surface (e.g. clamped RTTs)
};

// Speed-of-light propagation, km per ms.
inline constexpr double kPropagationKmPerMs = 300.0;

// Multilateration by least squares over >= 3 non-collinear anchors, solved by
// coarse grid search plus local pattern refinement. The two-way model maps
// rtt = 2*distance/propagation; pass one_way=true for rtt = distance/propagation.
GeoEstimate geolocate(std::span<const GeoAnchor> anchors,
                      double propagation_km_per_ms = kPropagationKmPerMs, bool one_way = false);

// Feature order: height, wingspan, arm_ratio, ipd, room_w, room_l, depth,
// pitch, reaction, refresh_rate.
inline constexpr int kFeatureCount = 10;
extern const std::array<const char*, kFeatureCount> kFeatureNames;

struct FeatureVector {
  Eigen::Matrix<double, kFeatureCount, 1> values =
      Eigen::Matrix<double, kFeatureCount, 1>::Zero();
  std::array<bool, kFeatureCount> present{};
};

// Runs every estimator against the stream; estimators that fail leave their
// feature absent.
FeatureVector harvest_features(std::span<const TelemetryFrame> stream);

struct PopulationEntry {
  int user_id = 0;
  FeatureVector features;
};

// Nearest neighbor under Euclidean distance on shared present features,
// z-normalized per attribute over the population (constant attributes drop
// out). Throws when probe and population share no features.
int identify(std::span<const PopulationEntry> population, const FeatureVector& probe);

}  // namespace vrcloak

#endif  // VRCLOAK_ADVERSARY_HPP_
