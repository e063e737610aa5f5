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

#include "vrcloak/transforms.hpp"

#include <cmath>
#include <string>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

void shift_y(TelemetryFrame& f, double dy) {
  f.head.y() += dy;
  f.right.y() += dy;
  f.left.y() += dy;
  if (f.eyes) {
    f.eyes->left.y() += dy;
    f.eyes->right.y() += dy;
  }
}

void shift_xz(TelemetryFrame& f, double dx, double dz) {
  for (Eigen::Vector3d* p : {&f.head, &f.right, &f.left}) {
    p->x() += dx;
    p->z() += dz;
  }
  if (f.eyes) {
    for (Eigen::Vector3d* p : {&f.eyes->left, &f.eyes->right}) {
      p->x() += dx;
      p->z() += dz;
    }
  }
}

// Radial retargeting about the controller midpoint: each controller's radial
// coordinate d_i is scaled so that full extension (d_i = span/2) lands on the
// per-arm target reach T_i. Zero point: d_i = 0 displaces nothing, so touching
// hands stay touching.
TelemetryFrame retarget_radial(const TelemetryFrame& frame, double span, double target_r,
                               double arm_r, double target_l, double arm_l) {
  TelemetryFrame out = frame;
  PolarDecomposition pd =
      polar_transform(frame.right.x(), frame.right.z(), frame.left.x(), frame.left.z());
  double half = span / 2.0;
  double offset_r = (pd.d_r / half) * (target_r - arm_r);
  double offset_l = (pd.d_l / half) * (target_l - arm_l);
  out.right.x() += offset_r * std::cos(pd.alpha_r);
  out.right.z() += offset_r * std::sin(pd.alpha_r);
  out.left.x() += offset_l * std::cos(pd.alpha_l);
  out.left.z() += offset_l * std::sin(pd.alpha_l);
  return out;
}

}  // namespace

void validate_ground_truth(const GroundTruth& t) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
      throw ValidationError(std::string("ground truth field not positive: ") + name);
    }
  };
  positive(t.height, "height");
  positive(t.arm_r, "arm_r");
  positive(t.arm_l, "arm_l");
  positive(t.ipd, "ipd");
  positive(t.pitch, "pitch");
  positive(t.depth, "depth");
  positive(t.room_w, "room_w");
  positive(t.room_l, "room_l");
  double ratio = t.arm_ratio();
  if (!(ratio > 0 && ratio < 1)) {
    throw ValidationError("ground truth field out of range: arm_ratio");
  }
}

SessionOffsets identity_offsets(const GroundTruth& truth) {
  SessionOffsets o;
  o.height = truth.height;
  o.depth = truth.depth;
  o.span = truth.wingspan();
  o.ratio = truth.arm_ratio();
  o.room_w = truth.room_w;
  o.room_l = truth.room_l;
  o.ipd_offset = 0;
  o.pitch_offset = 0;
  o.mirrored = false;
  return o;
}

PolarDecomposition polar_transform(double x_r, double z_r, double x_l, double z_l) {
  double mx = (x_r + x_l) / 2.0;
  double mz = (z_r + z_l) / 2.0;
  Eigen::Vector2d dr(x_r - mx, z_r - mz);
  Eigen::Vector2d dl(x_l - mx, z_l - mz);
  PolarDecomposition pd;
  pd.d_r = dr.norm();
  pd.d_l = dl.norm();
  pd.alpha_r = pd.d_r == 0 ? 0.0 : std::atan2(dr.y(), dr.x());
  pd.alpha_l = pd.d_l == 0 ? 0.0 : std::atan2(dl.y(), dl.x());
  return pd;
}

TelemetryFrame apply_ipd(const TelemetryFrame& frame, const SessionOffsets& offsets, bool* applied) {
  if (!frame.eyes) {
    if (applied != nullptr) *applied = false;
    return frame;
  }
  if (applied != nullptr) *applied = true;
  TelemetryFrame out = frame;
  Eigen::Vector3d mid = (frame.eyes->left + frame.eyes->right) / 2.0;
  double gap = frame.eyes->gap_m();
  double new_gap = gap + offsets.ipd_offset / 1000.0;  // offset carried in mm
  Eigen::Vector3d axis =
      gap == 0 ? Eigen::Vector3d(1, 0, 0) : Eigen::Vector3d((frame.eyes->right - frame.eyes->left) / gap);
  out.eyes->left = mid - axis * (new_gap / 2.0);
  out.eyes->right = mid + axis * (new_gap / 2.0);
  return out;
}

TelemetryFrame apply_pitch(const TelemetryFrame& frame, const SessionOffsets& offsets, bool* applied) {
  if (!frame.pitch_hz) {
    if (applied != nullptr) *applied = false;
    return frame;
  }
  if (applied != nullptr) *applied = true;
  TelemetryFrame out = frame;
  *out.pitch_hz += offsets.pitch_offset;
  return out;
}

TelemetryFrame apply_height(const TelemetryFrame& frame, const GroundTruth& truth,
                            const SessionOffsets& offsets) {
  // y'_h = y_h * (height'/height); hands shift by the head's offset so the
  // head-hand distances appear unchanged.
  double offset = frame.head.y() * (offsets.height / truth.height) - frame.head.y();
  TelemetryFrame out = frame;
  shift_y(out, offset);
  return out;
}

TelemetryFrame apply_depth(const TelemetryFrame& frame, const GroundTruth& truth,
                           const SessionOffsets& offsets) {
  // y'_h = height - (height - y_h) * (depth'/depth)
  double y_h = frame.head.y();
  double offset = (truth.height - ((truth.height - y_h) / truth.depth) * offsets.depth) - y_h;
  TelemetryFrame out = frame;
  shift_y(out, offset);
  return out;
}

TelemetryFrame apply_wingspan(const TelemetryFrame& frame, const GroundTruth& truth,
                              const SessionOffsets& offsets) {
  // Half of span' per side: full extension separates the hands by exactly
  // span', touching hands stay at 0.
  double span = truth.wingspan();
  double delta = (offsets.span - span) / 2.0;
  return retarget_radial(frame, span, truth.arm_r + delta, truth.arm_r, truth.arm_l + delta,
                         truth.arm_l);
}

TelemetryFrame apply_arm_ratio(const TelemetryFrame& frame, const GroundTruth& truth,
                               const SessionOffsets& offsets, ArmRatioMode mode) {
  if (!(offsets.ratio > 0)) {
    throw ValidationError("invalid params: arm ratio offset must be > 0");
  }
  double span = truth.wingspan();
  double target_r = span * offsets.ratio;
  double target_l = mode == ArmRatioMode::corrected ? span * (1.0 - offsets.ratio)
                                                    : span * (1.0 / offsets.ratio);
  return retarget_radial(frame, span, target_r, truth.arm_r, target_l, truth.arm_l);
}

TelemetryFrame apply_room(const TelemetryFrame& frame, const GroundTruth& truth,
                          const SessionOffsets& offsets) {
  // Play-space origin is the room center; offsets vanish there and reach
  // (W'-W)/2, (L'-L)/2 at the walls. x and z use independently drawn noise.
  double offset_x = (frame.head.x() / truth.room_w) * offsets.room_w - frame.head.x();
  double offset_z = (frame.head.z() / truth.room_l) * offsets.room_l - frame.head.z();
  TelemetryFrame out = frame;
  shift_xz(out, offset_x, offset_z);
  return out;
}

TelemetryFrame apply_mirror(const TelemetryFrame& frame, const SessionOffsets& offsets) {
  if (!offsets.mirrored) return frame;
  TelemetryFrame out = frame;
  out.head.x() = -frame.head.x();
  out.right = Eigen::Vector3d(-frame.left.x(), frame.left.y(), frame.left.z());
  out.left = Eigen::Vector3d(-frame.right.x(), frame.right.y(), frame.right.z());
  if (frame.eyes) {
    out.eyes->right = Eigen::Vector3d(-frame.eyes->left.x(), frame.eyes->left.y(), frame.eyes->left.z());
    out.eyes->left = Eigen::Vector3d(-frame.eyes->right.x(), frame.eyes->right.y(), frame.eyes->right.z());
  }
  for (Event& e : out.events) {
    if (e.hand == Hand::left) {
      e.hand = Hand::right;
    } else if (e.hand == Hand::right) {
      e.hand = Hand::left;
    }
  }
  return out;
}

}  // namespace vrcloak
