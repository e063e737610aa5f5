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

#include "vrcloak/calibration.hpp"

#include <cmath>

#include "vrcloak/errors.hpp"

namespace vrcloak {

GroundTruth calibrate(const CalibrationSnapshot& s, const CalibrationOptions& opt) {
  double normal_len = s.floor_normal.norm();
  if (!std::isfinite(normal_len) || normal_len < 1e-9) {
    throw ValidationError("calibration error: degenerate floor plane normal");
  }
  if ((s.hand_r - s.head).norm() < 0.05 || (s.hand_l - s.head).norm() < 0.05) {
    throw ValidationError("implausible pose: hands within 5 cm of head");
  }
  if (!(s.play_width > 0) || !(s.play_length > 0)) {
    throw ValidationError("calibration error: play area must be positive");
  }

  Eigen::Vector3d n = s.floor_normal / normal_len;
  auto horizontal_dist = [&s](const Eigen::Vector3d& p) {
    Eigen::Vector2d d(p.x() - s.head.x(), p.z() - s.head.z());
    return d.norm();
  };

  GroundTruth t;
  t.height = std::abs(n.dot(s.head - s.floor_origin));
  t.arm_r = horizontal_dist(s.hand_r);
  t.arm_l = horizontal_dist(s.hand_l);
  t.ipd = (s.eye_r - s.eye_l).norm() * 1000.0;  // mm
  t.room_w = s.play_width;
  t.room_l = s.play_length;
  t.depth = opt.assumed_depth;
  t.pitch = opt.default_pitch;
  t.right_handed = opt.right_handed;
  validate_ground_truth(t);
  return t;
}

}  // namespace vrcloak
