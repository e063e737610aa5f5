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

#include "vrcloak/session.hpp"

#include <cmath>
#include <doctest.h>

#include "oracles.hpp"
#include "vrcloak/adversary.hpp"
#include "vrcloak/errors.hpp"
#include "vrcloak/harness.hpp"
#include "vrcloak/stats.hpp"
#include "vrcloak/synthpop.hpp"

using namespace vrcloak;

namespace {

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

TelemetryFrame standing_frame(double t_ms, const GroundTruth& truth) {
  TelemetryFrame f;
  f.t_ms = t_ms;
  f.head = {0, truth.height, 0};
  f.right = {0.25, truth.height - 0.55, 0.1};
  f.left = {-0.25, truth.height - 0.55, 0.1};
  return f;
}

}  // namespace

TEST_CASE("level off leaves identity offsets and an empty ledger") {
  DefenseConfig cfg;
  cfg.level = PrivacyLevel::off;
  GroundTruth truth = default_truth();
  Session s = Session::begin(cfg, truth, 0);
  CHECK(s.offsets().height == truth.height);
  CHECK(s.offsets().ipd_offset == 0.0);
  CHECK_FALSE(s.offsets().mirrored);
  CHECK(budget_total(s.ledger()) == 0.0);
  CHECK(s.report().epsilons.empty());

  TelemetryFrame f = standing_frame(0, truth);
  f.eyes = EyePair{{-0.0315, 1.65, 0.03}, {0.0315, 1.65, 0.03}};
  f.pitch_hz = 120;
  CHECK(s.process(f) == f);
}

TEST_CASE("same seed and session id reproduce identical offsets") {
  DefenseConfig cfg;
  cfg.master_seed = 77;
  GroundTruth truth = default_truth();
  Session a = Session::begin(cfg, truth, 5);
  Session b = Session::begin(cfg, truth, 5);
  CHECK(a.offsets().height == b.offsets().height);
  CHECK(a.offsets().span == b.offsets().span);
  CHECK(a.offsets().ipd_offset == b.offsets().ipd_offset);
  CHECK(a.offsets().mirrored == b.offsets().mirrored);

  Session c = Session::begin(cfg, truth, 6);
  CHECK(a.offsets().height != c.offsets().height);
}

TEST_CASE("one-time randomization ignores the session id") {
  DefenseConfig cfg;
  cfg.master_seed = 13;
  cfg.rerandomize_per_session = false;
  GroundTruth truth = default_truth();
  Session a = Session::begin(cfg, truth, 1);
  Session b = Session::begin(cfg, truth, 2);
  CHECK(a.offsets().height == b.offsets().height);
  CHECK(a.offsets().room_l == b.offsets().room_l);
  CHECK(a.offsets().mirrored == b.offsets().mirrored);
}

TEST_CASE("toggling one defense never shifts another's noise") {
  GroundTruth truth = default_truth();
  DefenseConfig all;
  all.master_seed = 99;
  Session with_all = Session::begin(all, truth, 0);

  DefenseConfig no_wingspan = all;
  no_wingspan.enabled.erase(Feature::wingspan);
  Session without = Session::begin(no_wingspan, truth, 0);

  CHECK(with_all.offsets().height == without.offsets().height);
  CHECK(with_all.offsets().room_w == without.offsets().room_w);
  CHECK(with_all.offsets().ipd_offset == without.offsets().ipd_offset);
  CHECK(with_all.offsets().mirrored == without.offsets().mirrored);
  CHECK(without.offsets().span == truth.wingspan());  // identity when disabled
}

TEST_CASE("ledger lists exactly the enabled epsilon-consuming attributes") {
  GroundTruth truth = default_truth();
  DefenseConfig cfg;
  cfg.level = PrivacyLevel::medium;
  Session s = Session::begin(cfg, truth, 0);
  std::vector<std::pair<std::string, double>> expected = {
      {"height", 3}, {"depth", 3}, {"wingspan", 1}, {"arm_ratio", 1},
      {"room", 1},   {"ipd", 3},   {"pitch", 1},    {"handedness", 0.88}};
  REQUIRE(s.ledger().entries.size() == expected.size());
  for (const auto& [name, eps] : expected) {
    bool found = false;
    for (const auto& [n, e] : s.ledger().entries) {
      if (n == name && e == doctest::Approx(eps)) found = true;
    }
    CHECK_MESSAGE(found, name);
  }

  SessionReport rep = s.report();
  CHECK(rep.epsilons.size() == 8);

  DefenseConfig with_override = cfg;
  with_override.epsilon_overrides[Feature::height] = 2.0;
  Session o = Session::begin(with_override, truth, 0);
  CHECK(o.report().epsilons[0].second == doctest::Approx(2.0));
}

TEST_CASE("config validation rejects non-positive overrides") {
  DefenseConfig cfg;
  cfg.epsilon_overrides[Feature::height] = 0.0;
  GroundTruth truth = default_truth();
  CHECK_THROWS_AS(Session::begin(cfg, truth, 0), ValidationError);
}

TEST_CASE("missing truth fields are reported by name") {
  DefenseConfig cfg;
  GroundTruth truth = default_truth();
  truth.depth = 0;
  try {
    Session::begin(cfg, truth, 0);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("depth") != std::string::npos);
  }
  // With the depth defense disabled the same truth is acceptable.
  cfg.enabled.erase(Feature::depth);
  CHECK_NOTHROW(Session::begin(cfg, truth, 0));
}

TEST_CASE("non-monotonic timestamps raise a stream error") {
  DefenseConfig cfg;
  GroundTruth truth = default_truth();
  Session s = Session::begin(cfg, truth, 0);
  (void)s.process(standing_frame(10, truth));
  CHECK_THROWS_AS(s.process(standing_frame(10, truth)), StreamError);
}

TEST_CASE("height-only session maps a standing head to height-prime") {
  GroundTruth truth = default_truth();
  DefenseConfig cfg;
  cfg.enabled = {Feature::height};
  cfg.master_seed = 4;
  Session s = Session::begin(cfg, truth, 0);
  TelemetryFrame out = s.process(standing_frame(0, truth));
  CHECK(out.head.y() == doctest::Approx(s.offsets().height).epsilon(1e-12));
}

TEST_CASE("full pipeline keeps a standing frame finite and room-scaled") {
  GroundTruth truth = default_truth();
  DefenseConfig cfg;
  cfg.master_seed = 5;
  Session s = Session::begin(cfg, truth, 0);
  TelemetryFrame f = standing_frame(0, truth);
  f.head.x() = 1.0;
  f.head.z() = -0.7;
  f.right.x() += 1.0;
  f.left.x() += 1.0;
  f.right.z() -= 0.7;
  f.left.z() -= 0.7;
  f.eyes = EyePair{f.head + Eigen::Vector3d(-0.0315, -0.05, 0.03),
                   f.head + Eigen::Vector3d(0.0315, -0.05, 0.03)};
  f.pitch_hz = truth.pitch;
  TelemetryFrame out = s.process(f);
  for (double c : {out.head.x(), out.head.y(), out.head.z(), out.right.x(), out.right.y(),
                   out.right.z(), out.left.x(), out.left.y(), out.left.z()}) {
    CHECK(std::isfinite(c));
  }
  double scale_w = s.offsets().room_w / truth.room_w;
  double mirror_sign = s.offsets().mirrored ? -1.0 : 1.0;
  CHECK(out.head.x() == doctest::Approx(mirror_sign * 1.0 * scale_w).epsilon(1e-9));
  CHECK(*out.pitch_hz == doctest::Approx(truth.pitch + s.offsets().pitch_offset));
}

TEST_CASE("toggle soundness: a disabled defense leaves its estimator at the raw value") {
  SyntheticUser user = sample_population(1, 404)[0];
  user.jitter_m = 0;
  auto raw = generate_session(user, 20, 60, 11);

  auto estimate_with = [&](std::set<Feature> enabled) {
    DefenseConfig cfg;
    cfg.master_seed = 31337;
    cfg.enabled = std::move(enabled);
    Session s = Session::begin(cfg, user.truth, 0);
    std::vector<TelemetryFrame> defended;
    defended.reserve(raw.size());
    for (const auto& f : raw) defended.push_back(s.process(f));
    return harvest_session(defended);
  };

  SessionEstimates none = estimate_with({});
  SessionEstimates room_only = estimate_with({Feature::room});
  // Height is untouched by the room defense.
  CHECK(*room_only.height == *none.height);
  CHECK(*room_only.wingspan == *none.wingspan);
  SessionEstimates height_only = estimate_with({Feature::height});
  CHECK(*height_only.room_w == *none.room_w);
  CHECK(*height_only.ipd == *none.ipd);
}

TEST_CASE("within-session consistency: prefix max converges to height-prime, never past it") {
  SyntheticUser user = sample_population(1, 7)[0];
  user.jitter_m = 0;
  auto raw = generate_session(user, 15, 45, 3);
  DefenseConfig cfg;
  cfg.enabled = {Feature::height};
  cfg.master_seed = 21;
  Session s = Session::begin(cfg, user.truth, 0);
  double peak = -1e9;
  for (const auto& f : raw) {
    double y = s.process(f).head.y();
    double prev = peak;
    peak = std::max(peak, y);
    CHECK(peak >= prev);
    CHECK(peak <= s.offsets().height + 1e-9);
  }
  CHECK(peak == doctest::Approx(s.offsets().height).epsilon(1e-9));
}

TEST_CASE("cross-session estimates scatter like the truncated Laplace and decorrelate") {
  GroundTruth truth = default_truth();
  DefenseConfig cfg;
  cfg.enabled = {Feature::height};
  cfg.epsilon_overrides[Feature::height] = 1.0;
  cfg.master_seed = 4242;

  const int kSessions = 200;
  std::vector<double> estimates;
  estimates.reserve(kSessions);
  for (int sid = 0; sid < kSessions; ++sid) {
    Session s = Session::begin(cfg, truth, static_cast<std::uint64_t>(sid));
    // The attacker's height estimate on a defended stream equals height'.
    estimates.push_back(s.offsets().height);
  }
  const AttributePreset& p = preset_for(Feature::height);
  double scale = (p.upper - p.lower) / 1.0;
  double expected_sd = oracles::trunc_laplace_stddev(truth.height, scale, p.lower, p.upper);
  double sd = stddev(estimates);
  CHECK(sd > expected_sd / 2);
  CHECK(sd < expected_sd * 2);
  CHECK(std::abs(autocorrelation_lag1(estimates)) < 0.1);
}

TEST_CASE("geolocation and reaction clamps resolve to the higher value") {
  DefenseConfig cfg;
  cfg.level = PrivacyLevel::high;  // latency 50 ms, reaction 100 ms
  CHECK(cfg.effective_latency_clamp() == 100.0);
  CHECK(cfg.effective_reaction_pad() == 100.0);

  cfg.level = PrivacyLevel::low;  // latency 25 ms, reaction 10 ms
  CHECK(cfg.effective_latency_clamp() == 25.0);
  CHECK(cfg.effective_reaction_pad() == 25.0);

  cfg.enabled.erase(Feature::latency_geo);
  CHECK(cfg.effective_reaction_pad() == 10.0);
}
