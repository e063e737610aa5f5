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

#include "vrcloak/synthpop.hpp"

#include <doctest.h>

#include "vrcloak/adversary.hpp"
#include "vrcloak/errors.hpp"
#include "vrcloak/presets.hpp"
#include "vrcloak/stats.hpp"
#include "vrcloak/telemetry.hpp"

using namespace vrcloak;

TEST_CASE("sampled attributes stay inside preset bounds") {
  for (PopulationModel model :
       {PopulationModel::uniform_in_bounds, PopulationModel::truncated_normal}) {
    auto population = sample_population(200, 12, model);
    for (const SyntheticUser& u : population) {
      CHECK(u.truth.height >= preset_for(Feature::height).lower);
      CHECK(u.truth.height <= preset_for(Feature::height).upper);
      CHECK(u.truth.wingspan() >= preset_for(Feature::wingspan).lower);
      CHECK(u.truth.wingspan() <= preset_for(Feature::wingspan).upper);
      CHECK(u.truth.arm_ratio() >= preset_for(Feature::arm_ratio).lower);
      CHECK(u.truth.arm_ratio() <= preset_for(Feature::arm_ratio).upper);
      CHECK(u.truth.ipd >= preset_for(Feature::ipd).lower);
      CHECK(u.truth.ipd <= preset_for(Feature::ipd).upper);
      CHECK(u.truth.pitch >= preset_for(Feature::pitch).lower);
      CHECK(u.truth.pitch <= preset_for(Feature::pitch).upper);
      CHECK(u.truth.depth > 0);
      CHECK(u.truth.depth <= preset_for(Feature::depth).upper);
      CHECK(u.truth.room_w <= preset_for(Feature::room).upper);
      CHECK(u.truth.room_l <= preset_for(Feature::room).upper);
      CHECK_NOTHROW(validate_ground_truth(u.truth));
    }
  }
}

TEST_CASE("population sampling is reproducible and user-independent") {
  auto a = sample_population(50, 99);
  auto b = sample_population(50, 99);
  for (int i = 0; i < 50; ++i) {
    CHECK(a[static_cast<std::size_t>(i)].truth.height == b[static_cast<std::size_t>(i)].truth.height);
    CHECK(a[static_cast<std::size_t>(i)].reaction_ms == b[static_cast<std::size_t>(i)].reaction_ms);
  }
  auto c = sample_population(50, 100);
  CHECK(a[0].truth.height != c[0].truth.height);
}

TEST_CASE("uniform sample mean height approaches the bounds midpoint") {
  auto population = sample_population(1000, 2718);
  std::vector<double> heights;
  heights.reserve(population.size());
  for (const SyntheticUser& u : population) heights.push_back(u.truth.height);
  CHECK(mean(heights) == doctest::Approx(1.661).epsilon(0.01));
}

TEST_CASE("60 s at 90 Hz gives 5400 grid frames plus inserted event frames") {
  SyntheticUser u = sample_population(1, 5)[0];
  auto frames = generate_session(u, 60, 90, 1);
  CHECK(frames.size() >= 5400);
  CHECK(frames.size() <= 5400 + 20);
  double prev = -1;
  for (const TelemetryFrame& f : frames) {
    CHECK(f.t_ms > prev);
    prev = f.t_ms;
  }
}

TEST_CASE("jitter 0 gives max head height exactly at truth") {
  SyntheticUser u = sample_population(1, 6)[0];
  u.jitter_m = 0;
  auto frames = generate_session(u, 20, 60, 2);
  double max_y = 0;
  for (const TelemetryFrame& f : frames) max_y = std::max(max_y, f.head.y());
  CHECK(max_y == u.truth.height);
}

TEST_CASE("full script passes every estimator within 1 percent of ground truth") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SyntheticUser u = sample_population(3, 55)[seed % 3];
    u.jitter_m = 0;
    auto frames = generate_session(u, 60, 90, seed);

    CHECK(estimate_height(frames) ==
          doctest::Approx(u.truth.height).epsilon(0.01));
    CHECK(estimate_wingspan(frames) == doctest::Approx(u.truth.wingspan()).epsilon(0.01));
    auto [w, l] = estimate_room(frames);
    CHECK(w == doctest::Approx(u.truth.room_w).epsilon(0.01));
    CHECK(l == doctest::Approx(u.truth.room_l).epsilon(0.01));
    CHECK(estimate_depth(frames, estimate_height(frames)) ==
          doctest::Approx(u.truth.depth).epsilon(0.01));
    CHECK(estimate_ipd(frames) == doctest::Approx(u.truth.ipd).epsilon(0.01));
    CHECK(estimate_pitch(frames) == doctest::Approx(u.truth.pitch).epsilon(0.01));
    CHECK(estimate_reaction(frames) == doctest::Approx(u.reaction_ms).epsilon(0.01));
    CHECK(estimate_handedness(frames) == u.truth.right_handed);
    auto [er, el] = estimate_arm_extents(frames);
    CHECK(er == doctest::Approx(u.truth.arm_r).epsilon(0.01));
    CHECK(el == doctest::Approx(u.truth.arm_l).epsilon(0.01));
  }
}

TEST_CASE("script completeness: every estimator succeeds on a 60 s default-jitter session") {
  auto population = sample_population(5, 321);
  for (const SyntheticUser& u : population) {
    auto frames = generate_session(u, 60, u.device_rate_hz, 777);
    CHECK_NOTHROW((void)estimate_height(frames));
    CHECK_NOTHROW((void)estimate_wingspan(frames));
    CHECK_NOTHROW((void)estimate_room(frames));
    CHECK_NOTHROW((void)estimate_depth(frames, estimate_height(frames)));
    CHECK_NOTHROW((void)estimate_ipd(frames));
    CHECK_NOTHROW((void)estimate_pitch(frames));
    CHECK_NOTHROW((void)estimate_handedness(frames));
    CHECK_NOTHROW((void)estimate_longer_arm(frames));
    CHECK_NOTHROW((void)estimate_reaction(frames));
    CHECK_NOTHROW((void)estimate_refresh_rate(frames));
  }
}

TEST_CASE("session generation is deterministic under seed") {
  SyntheticUser u = sample_population(1, 8)[0];
  auto a = generate_session(u, 15, 45, 3);
  auto b = generate_session(u, 15, 45, 3);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("durations below the script minimum are rejected") {
  SyntheticUser u = sample_population(1, 8)[0];
  CHECK_THROWS_AS(generate_session(u, 5, 90, 1), ValidationError);
  CHECK_THROWS_AS(generate_session(u, 10, 0, 1), ValidationError);
}
