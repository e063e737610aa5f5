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
// Per-frame coordinate transformations. Additive defenses (IPD, pitch) shift
// a static channel by a fixed offset; multiplicative defenses (height, squat
// depth, wingspan, arm ratio, room) rescale a range so the zero point is
// preserved exactly and the ground-truth extreme maps to the session's noisy
// value. All functions are pure: same inputs, same output frame.

#ifndef VRCLOAK_TRANSFORMS_HPP_
#define VRCLOAK_TRANSFORMS_HPP_

#include "vrcloak/telemetry.hpp"

namespace vrcloak {

// Calibrated sensitive attributes of one user. Plain aggregate; call
// validate_ground_truth before trusting the values.
struct GroundTruth {
  double height = 0;       // m
  double arm_r = 0;        // m
  double arm_l = 0;        // m
  double ipd = 0;          // mm
  double pitch = 0;        // Hz
  double depth = 0;        // m, squat depth
  double room_w = 0;       // m
  double room_l = 0;       // m
  bool right_handed = true;

  double wingspan() const { return arm_r + arm_l; }
  double arm_ratio() const { return arm_r / wingspan(); }
};

// Throws ValidationError naming the offending field.
void validate_ground_truth(const GroundTruth& truth);

// Per-session frozen noisy attribute values (primes) and derived offsets.
// height/depth/span/ratio/room_w/room_l hold the noisy values themselves;
// ipd_offset/pitch_offset hold (noisy value - truth) differences.
struct SessionOffsets {
  double height = 0;          // m
  double depth = 0;           // m
  double span = 0;            // m
  double ratio = 0;           // dimensionless
  double room_w = 0;          // m
  double room_l = 0;          // m
  double ipd_offset = 0;      // mm
  double pitch_offset = 0;    // Hz
  bool mirrored = false;
};

// Offsets that leave every frame untouched.
SessionOffsets identity_offsets(const GroundTruth& truth);

// Polar decomposition of the two controllers about their midpoint.
// d_r == d_l always (midpoint symmetry); angles are measured in the xz plane
// from +x toward +z, with the zero-vector convention alpha = 0.
struct PolarDecomposition {
  double d_r = 0;
  double d_l = 0;
  double alpha_r = 0;  // radians, (-pi, pi]
  double alpha_l = 0;
};

PolarDecomposition polar_transform(double x_r, double z_r, double x_l, double z_l);

// Additive defenses. Frames without the channel pass through unchanged;
// `applied` (when non-null) reports whether the transform ran.
TelemetryFrame apply_ipd(const TelemetryFrame& frame, const SessionOffsets& offsets,
                         bool* applied = nullptr);
TelemetryFrame apply_pitch(const TelemetryFrame& frame, const SessionOffsets& offsets,
                           bool* applied = nullptr);

// Multiplicative defenses. Eye positions ride along with the head so the
// eye midpoint stays anchored to it; only apply_ipd changes the gap.
TelemetryFrame apply_height(const TelemetryFrame& frame, const GroundTruth& truth,
                            const SessionOffsets& offsets);
TelemetryFrame apply_depth(const TelemetryFrame& frame, const GroundTruth& truth,
                           const SessionOffsets& offsets);
TelemetryFrame apply_wingspan(const TelemetryFrame& frame, const GroundTruth& truth,
                              const SessionOffsets& offsets);

// The arm-ratio defense retargets each arm's radial reach asymmetrically.
// `corrected` keeps the full-extension separation at span while the apparent
// ratio becomes ratio'; `literal` retains the published 1/ratio' left-arm
// factor, which sends the apparent left arm far out of bounds and exists for
// comparison only.
enum class ArmRatioMode { literal, corrected };

TelemetryFrame apply_arm_ratio(const TelemetryFrame& frame, const GroundTruth& truth,
                               const SessionOffsets& offsets,
                               ArmRatioMode mode = ArmRatioMode::corrected);

TelemetryFrame apply_room(const TelemetryFrame& frame, const GroundTruth& truth,
                          const SessionOffsets& offsets);

// Reflects the avatar across the x=0 plane and swaps left/right channels
// (controllers, eyes, event hand labels). Involution.
TelemetryFrame apply_mirror(const TelemetryFrame& frame, const SessionOffsets& offsets);

}  // namespace vrcloak

#endif  // VRCLOAK_TRANSFORMS_HPP_
