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

#ifndef VRCLOAK_CALIBRATION_HPP_
#define VRCLOAK_CALIBRATION_HPP_

#include <Eigen/Core>

#include "vrcloak/transforms.hpp"

namespace vrcloak {

// One-time snapshot of the tracked points plus the floor plane and play
// area, taken while the user stands upright in a T-pose at the room center
// (documented protocol precondition).
struct CalibrationSnapshot {
  Eigen::Vector3d head = Eigen::Vector3d::Zero();
  Eigen::Vector3d eye_l = Eigen::Vector3d::Zero();
  Eigen::Vector3d eye_r = Eigen::Vector3d::Zero();
  Eigen::Vector3d hand_l = Eigen::Vector3d::Zero();
  Eigen::Vector3d hand_r = Eigen::Vector3d::Zero();
  Eigen::Vector3d floor_origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d floor_normal = Eigen::Vector3d(0, 1, 0);
  double play_width = 0;   // m
  double play_length = 0;  // m
};

// Attributes a single snapshot cannot measure. Squat depth defaults to the
// upper bound so noise is centered conservatively; pitch defaults to the
// midpoint of the population bounds.
struct CalibrationOptions {
  double assumed_depth = 0.913;  // m
  double default_pitch = 170;    // Hz
  bool right_handed = true;
};

// Instantaneous ground-truth estimation: height is the head-to-floor-plane
// distance, arm lengths are horizontal head-to-hand distances, wingspan is
// their sum, IPD is the eye gap, room dimensions come from the play-area
// rectangle. Throws ValidationError for a degenerate floor normal or hands
// within 5 cm of the head (implausible pose). Privacy never depends on the
// accuracy of these estimates; they only center the noise.
GroundTruth calibrate(const CalibrationSnapshot& snapshot, const CalibrationOptions& options = {});

}  // namespace vrcloak

#endif  // VRCLOAK_CALIBRATION_HPP_
