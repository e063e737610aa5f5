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
#include <doctest.h>

#include "vrcloak/errors.hpp"
#include "vrcloak/random.hpp"

using namespace vrcloak;

namespace {

constexpr double kPi = 3.14159265358979323846;

GroundTruth default_truth() {
  GroundTruth t;
  t.height = 1.7;
  t.arm_r = 0.9;
  t.arm_l = 0.8;
  t.ipd = 63;
  t.pitch = 120;
  t.depth = 0.5;
  t.room_w = 4;
  t.room_l = 3;
  t.right_handed = true;
  return t;
}

TelemetryFrame frame_at(Eigen::Vector3d head, Eigen::Vector3d right, Eigen::Vector3d left) {
  TelemetryFrame f;
  f.head = std::move(head);
  f.right = std::move(right);
  f.left = std::move(left);
  return f;
}

// Random (truth, noisy-offset) pairs for property checks.
GroundTruth random_truth(RandomSource& rng) {
  GroundTruth t;
  t.height = 1.496 + rng.uniform_open() * 0.33;
  double span = 1.556 + rng.uniform_open() * 0.343;
  double ratio = 0.4872 + rng.uniform_open() * 0.025;
  t.arm_r = span * ratio;
  t.arm_l = span - t.arm_r;
  t.ipd = 55.7 + rng.uniform_open() * 15.3;
  t.pitch = 85 + rng.uniform_open() * 170;
  t.depth = 0.2 + rng.uniform_open() * 0.7;
  t.room_w = 2 + rng.uniform_open() * 3;
  t.room_l = 2 + rng.uniform_open() * 3;
  return t;
}

SessionOffsets random_offsets(const GroundTruth& t, RandomSource& rng) {
  SessionOffsets o = identity_offsets(t);
  o.height = 1.496 + rng.uniform_open() * 0.33;
  o.depth = rng.uniform_open() * 0.913;
  o.span = 1.556 + rng.uniform_open() * 0.343;
  o.ratio = 0.4872 + rng.uniform_open() * 0.025;
  o.room_w = rng.uniform_open() * 5;
  o.room_l = rng.uniform_open() * 5;
  o.ipd_offset = rng.uniform_open() * 15 - 7.5;
  o.pitch_offset = rng.uniform_open() * 170 - 85;
  return o;
}

}  // namespace

TEST_CASE("polar transform worked examples") {
  PolarDecomposition pd = polar_transform(0.85, 0, -0.85, 0);
  CHECK(pd.d_r == doctest::Approx(0.85));
  CHECK(pd.d_l == doctest::Approx(0.85));
  CHECK(pd.alpha_r == doctest::Approx(0.0));
  CHECK(pd.alpha_l == doctest::Approx(kPi));

  pd = polar_transform(1, 1, -1, -1);
  CHECK(pd.d_r == doctest::Approx(std::sqrt(2.0)));
  CHECK(pd.d_l == doctest::Approx(std::sqrt(2.0)));
  CHECK(pd.alpha_r == doctest::Approx(kPi / 4));
  CHECK(pd.alpha_l == doctest::Approx(-3 * kPi / 4));

  pd = polar_transform(0.3, -0.2, 0.3, -0.2);
  CHECK(pd.d_r == 0.0);
  CHECK(pd.d_l == 0.0);
  CHECK(pd.alpha_r == 0.0);
  CHECK(pd.alpha_l == 0.0);
}

TEST_CASE("polar distances are equal at any pose") {
  RandomSource rng(11);
  for (int i = 0; i < 200; ++i) {
    PolarDecomposition pd =
        polar_transform(rng.uniform_open() * 4 - 2, rng.uniform_open() * 4 - 2,
                        rng.uniform_open() * 4 - 2, rng.uniform_open() * 4 - 2);
    CHECK(pd.d_r == doctest::Approx(pd.d_l).epsilon(1e-12));
  }
}

TEST_CASE("ipd offset shifts the eye gap symmetrically about its midpoint") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.ipd_offset = -3;  // mm

  TelemetryFrame f = frame_at({0, 1.7, 0}, {0.3, 1.2, 0}, {-0.3, 1.2, 0});
  f.eyes = EyePair{{-0.0315, 1.65, 0.05}, {0.0315, 1.65, 0.05}};
  bool applied = false;
  TelemetryFrame out = apply_ipd(f, o, &applied);
  CHECK(applied);
  CHECK(out.eyes->gap_m() * 1000 == doctest::Approx(60.0).epsilon(1e-9));
  Eigen::Vector3d mid = (out.eyes->left + out.eyes->right) / 2;
  CHECK(mid.isApprox((f.eyes->left + f.eyes->right) / 2, 1e-12));

  o.ipd_offset = 0;
  out = apply_ipd(f, o);
  CHECK(out == f);

  f.eyes.reset();
  o.ipd_offset = -3;
  out = apply_ipd(f, o, &applied);
  CHECK_FALSE(applied);
  CHECK(out == f);
}

TEST_CASE("pitch offset is additive") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.pitch_offset = 30;
  TelemetryFrame f = frame_at({0, 1.7, 0}, {0.3, 1.2, 0}, {-0.3, 1.2, 0});
  f.pitch_hz = 120;
  CHECK(*apply_pitch(f, o).pitch_hz == doctest::Approx(150.0));
  o.pitch_offset = 0;
  CHECK(apply_pitch(f, o) == f);
  f.pitch_hz.reset();
  bool applied = true;
  CHECK(apply_pitch(f, o, &applied) == f);
  CHECK_FALSE(applied);
}

TEST_CASE("height defense worked example") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.height = 1.75;
  TelemetryFrame f = frame_at({0, 0.85, 0}, {0.3, 0.9, 0}, {-0.3, 0.8, 0});
  TelemetryFrame out = apply_height(f, t, o);
  CHECK(out.head.y() == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(out.right.y() == doctest::Approx(0.925).epsilon(1e-12));
  CHECK(out.left.y() == doctest::Approx(0.825).epsilon(1e-12));
}

TEST_CASE("height defense zero point and endpoint") {
  RandomSource rng(21);
  for (int i = 0; i < 300; ++i) {
    GroundTruth t = random_truth(rng);
    SessionOffsets o = random_offsets(t, rng);
    TelemetryFrame zero = frame_at({0.2, 0, -0.1}, {0.2, -0.5, 0}, {-0.2, -0.5, 0});
    CHECK(apply_height(zero, t, o).head.y() == 0.0);
    TelemetryFrame top = frame_at({0, t.height, 0}, {0.2, t.height - 0.5, 0}, {-0.2, t.height - 0.5, 0});
    CHECK(apply_height(top, t, o).head.y() == doctest::Approx(o.height).epsilon(1e-9));
  }
}

TEST_CASE("depth defense worked example and extremes") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.depth = 0.6;
  TelemetryFrame mid = frame_at({0, 1.2, 0}, {0.2, 0.8, 0}, {-0.2, 0.8, 0});
  CHECK(apply_depth(mid, t, o).head.y() == doctest::Approx(1.1).epsilon(1e-12));

  TelemetryFrame standing = frame_at({0, 1.7, 0}, {0.2, 1.2, 0}, {-0.2, 1.2, 0});
  CHECK(apply_depth(standing, t, o) == standing);

  TelemetryFrame half = frame_at({0, t.height - t.depth / 2, 0}, {0.2, 1, 0}, {-0.2, 1, 0});
  CHECK(apply_depth(half, t, o).head.y() == doctest::Approx(t.height - o.depth / 2).epsilon(1e-12));
}

TEST_CASE("wingspan defense worked examples") {
  GroundTruth t = default_truth();
  t.arm_r = t.arm_l = 0.85;
  SessionOffsets o = identity_offsets(t);
  o.span = 1.8;

  TelemetryFrame full = frame_at({0, 1.7, 0}, {0.85, 1.45, 0}, {-0.85, 1.45, 0});
  TelemetryFrame out = apply_wingspan(full, t, o);
  CHECK((out.right - out.left).norm() == doctest::Approx(1.8).epsilon(1e-12));

  TelemetryFrame touching = frame_at({0, 1.7, 0}, {0.1, 1.3, 0.2}, {0.1, 1.3, 0.2});
  out = apply_wingspan(touching, t, o);
  CHECK(out == touching);

  TelemetryFrame half = frame_at({0, 1.7, 0}, {0.425, 1.45, 0}, {-0.425, 1.45, 0});
  out = apply_wingspan(half, t, o);
  CHECK((out.right - out.left).norm() == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("wingspan endpoint equals span-prime for asymmetric arms at any angle") {
  RandomSource rng(31);
  for (int i = 0; i < 300; ++i) {
    GroundTruth t = random_truth(rng);
    SessionOffsets o = random_offsets(t, rng);
    double theta = rng.uniform_open() * 2 * kPi;
    Eigen::Vector3d dir(std::cos(theta), 0, std::sin(theta));
    Eigen::Vector3d head(rng.uniform_open() - 0.5, t.height, rng.uniform_open() - 0.5);
    TelemetryFrame full = frame_at(head, head + dir * t.arm_r - Eigen::Vector3d(0, 0.25, 0),
                                   head - dir * t.arm_l - Eigen::Vector3d(0, 0.25, 0));
    TelemetryFrame out = apply_wingspan(full, t, o);
    Eigen::Vector2d sep(out.right.x() - out.left.x(), out.right.z() - out.left.z());
    CHECK(sep.norm() == doctest::Approx(o.span).epsilon(1e-9));
  }
}

TEST_CASE("arm ratio corrected mode hits the spec example exactly") {
  GroundTruth t = default_truth();  // arms 0.9 / 0.8, span 1.7
  SessionOffsets o = identity_offsets(t);
  o.ratio = 0.55;
  TelemetryFrame full = frame_at({0, 1.7, 0}, {0.9, 1.45, 0}, {-0.8, 1.45, 0});
  TelemetryFrame out = apply_arm_ratio(full, t, o, ArmRatioMode::corrected);
  CHECK(out.right.x() == doctest::Approx(0.935).epsilon(1e-12));
  CHECK(out.left.x() == doctest::Approx(-0.765).epsilon(1e-12));
  double sum = out.right.x() - out.left.x();
  CHECK(sum == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(out.right.x() / sum == doctest::Approx(0.55).epsilon(1e-12));
}

TEST_CASE("arm ratio equal to truth is the identity at any pose") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);  // ratio = true ratio
  RandomSource rng(41);
  for (int i = 0; i < 100; ++i) {
    TelemetryFrame f = frame_at({0, 1.7, 0},
                                {rng.uniform_open() - 0.5, 1.2, rng.uniform_open() - 0.5},
                                {rng.uniform_open() - 0.5, 1.2, rng.uniform_open() - 0.5});
    TelemetryFrame out = apply_arm_ratio(f, t, o, ArmRatioMode::corrected);
    CHECK(out.right.isApprox(f.right, 1e-12));
    CHECK(out.left.isApprox(f.left, 1e-12));
  }
}

TEST_CASE("arm ratio corrected mode preserves separation at every pose") {
  RandomSource rng(43);
  for (int i = 0; i < 200; ++i) {
    GroundTruth t = random_truth(rng);
    SessionOffsets o = random_offsets(t, rng);
    TelemetryFrame f = frame_at({0, t.height, 0},
                                {rng.uniform_open() * 2 - 1, 1.2, rng.uniform_open() * 2 - 1},
                                {rng.uniform_open() * 2 - 1, 1.2, rng.uniform_open() * 2 - 1});
    TelemetryFrame out = apply_arm_ratio(f, t, o, ArmRatioMode::corrected);
    Eigen::Vector2d before(f.right.x() - f.left.x(), f.right.z() - f.left.z());
    Eigen::Vector2d after(out.right.x() - out.left.x(), out.right.z() - out.left.z());
    CHECK(after.norm() == doctest::Approx(before.norm()).epsilon(1e-9));
  }
}

TEST_CASE("arm ratio literal mode reproduces the published out-of-bounds offset") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.ratio = 0.55;
  TelemetryFrame full = frame_at({0, 1.7, 0}, {0.9, 1.45, 0}, {-0.8, 1.45, 0});
  TelemetryFrame out = apply_arm_ratio(full, t, o, ArmRatioMode::literal);
  // offset_l = span * (1/ratio') - arm_l ~= 2.291 m: the apparent left arm
  // lands far outside any plausible wingspan.
  double offset_l = -(out.left.x() - full.left.x());
  CHECK(offset_l == doctest::Approx(1.7 / 0.55 - 0.8).epsilon(1e-9));
  CHECK(-out.left.x() > 2.0);
}

TEST_CASE("arm ratio rejects non-positive ratio offsets") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.ratio = 0;
  TelemetryFrame f = frame_at({0, 1.7, 0}, {0.9, 1.45, 0}, {-0.8, 1.45, 0});
  CHECK_THROWS_AS(apply_arm_ratio(f, t, o), ValidationError);
}

TEST_CASE("room defense worked example") {
  GroundTruth t = default_truth();  // W=4, L=3
  SessionOffsets o = identity_offsets(t);
  o.room_w = 4.5;
  o.room_l = 2.7;
  TelemetryFrame corner = frame_at({2, 1.7, 1.5}, {2.2, 1.2, 1.5}, {1.8, 1.2, 1.5});
  TelemetryFrame out = apply_room(corner, t, o);
  CHECK(out.head.x() == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(out.head.z() == doctest::Approx(1.35).epsilon(1e-12));
  // Controllers shift by the head's offset.
  CHECK(out.right.x() == doctest::Approx(2.45).epsilon(1e-12));
  CHECK(out.left.x() == doctest::Approx(2.05).epsilon(1e-12));

  TelemetryFrame center = frame_at({0, 1.7, 0}, {0.2, 1.2, 0}, {-0.2, 1.2, 0});
  CHECK(apply_room(center, t, o) == center);
}

TEST_CASE("room x and z scale independently") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  o.room_w = 4.8;  // apparent aspect ratio changes: W'/L' != W/L
  o.room_l = 1.5;
  TelemetryFrame corner = frame_at({2, 1.7, 1.5}, {2, 1.2, 1.5}, {2, 1.2, 1.5});
  TelemetryFrame out = apply_room(corner, t, o);
  CHECK(out.head.x() == doctest::Approx(2.4));
  CHECK(out.head.z() == doctest::Approx(0.75));
  CHECK((out.head.x() / out.head.z()) != doctest::Approx(2.0 / 1.5));
}

TEST_CASE("mirror reflects, swaps channels, and is an involution") {
  GroundTruth t = default_truth();
  SessionOffsets o = identity_offsets(t);
  TelemetryFrame f = frame_at({0.1, 1.7, 0.3}, {0.5, 1, 0.2}, {-0.4, 1.1, 0.1});
  f.events.push_back(Event{EventKind::interaction, Hand::right});
  f.eyes = EyePair{{0.07, 1.65, 0.3}, {0.13, 1.65, 0.3}};

  CHECK(apply_mirror(f, o) == f);  // mirrored = false

  o.mirrored = true;
  TelemetryFrame m = apply_mirror(f, o);
  CHECK(m.left.x() == doctest::Approx(-0.5));
  CHECK(m.left.y() == doctest::Approx(1.0));
  CHECK(m.left.z() == doctest::Approx(0.2));
  CHECK(m.right.x() == doctest::Approx(0.4));
  CHECK(m.events[0].hand == Hand::left);
  CHECK(m.eyes->gap_m() == doctest::Approx(f.eyes->gap_m()).epsilon(1e-12));

  CHECK(apply_mirror(m, o) == f);
}

TEST_CASE("mirror and height commute") {
  GroundTruth t = default_truth();
  RandomSource rng(51);
  SessionOffsets o = random_offsets(t, rng);
  o.mirrored = true;
  TelemetryFrame f = frame_at({0.1, 1.2, 0.3}, {0.5, 1, 0.2}, {-0.4, 1.1, 0.1});
  TelemetryFrame a = apply_mirror(apply_height(f, t, o), o);
  TelemetryFrame b = apply_height(apply_mirror(f, o), t, o);
  CHECK(a == b);
}

TEST_CASE("transforms are deterministic") {
  GroundTruth t = default_truth();
  RandomSource rng(61);
  SessionOffsets o = random_offsets(t, rng);
  TelemetryFrame f = frame_at({0.4, 1.1, -0.7}, {0.5, 1, 0.2}, {-0.4, 1.1, 0.1});
  CHECK(apply_height(f, t, o) == apply_height(f, t, o));
  CHECK(apply_room(f, t, o) == apply_room(f, t, o));
  CHECK(apply_wingspan(f, t, o) == apply_wingspan(f, t, o));
}

TEST_CASE("multiplicative defenses are linear between zero point and extreme") {
  GroundTruth t = default_truth();
  RandomSource rng(71);
  SessionOffsets o = random_offsets(t, rng);

  // Height: y'_h must lie on the line through (0,0) and (height, height').
  for (int i = 0; i <= 100; ++i) {
    double y = t.height * i / 100.0;
    TelemetryFrame f = frame_at({0, y, 0}, {0.2, y - 0.5, 0}, {-0.2, y - 0.5, 0});
    double expected = y * (o.height / t.height);
    CHECK(apply_height(f, t, o).head.y() == doctest::Approx(expected).epsilon(1e-9));
  }
  // Wingspan: separation scales linearly in the extension fraction.
  for (int i = 0; i <= 100; ++i) {
    double frac = i / 100.0;
    double span = t.wingspan();
    TelemetryFrame f = frame_at({0, 1.7, 0}, {frac * span / 2, 1.45, 0}, {-frac * span / 2, 1.45, 0});
    TelemetryFrame out = apply_wingspan(f, t, o);
    CHECK((out.right - out.left).norm() == doctest::Approx(frac * o.span).epsilon(1e-9));
  }
  // Room: head x maps linearly from center to wall.
  for (int i = 0; i <= 100; ++i) {
    double x = (t.room_w / 2) * i / 100.0;
    TelemetryFrame f = frame_at({x, 1.7, 0}, {x, 1.2, 0}, {x, 1.2, 0});
    CHECK(apply_room(f, t, o).head.x() == doctest::Approx(x * o.room_w / t.room_w).epsilon(1e-9));
  }
}

TEST_CASE("ground truth validation names the offending field") {
  GroundTruth t = default_truth();
  t.depth = 0;
  try {
    validate_ground_truth(t);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("depth") != std::string::npos);
  }
}
