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
// Synthetic user population and scripted sessions, standing in for study
// datasets. The motion script realizes every pose the attacks need: standing
// (max y = height), squats to height - depth, a T-pose at full wingspan with
// the true arm asymmetry, a rectangular walk touching all room corners,
// interaction events with a handedness-consistent majority, and
// stimulus/response pairs at the user's reaction time.

#ifndef VRCLOAK_SYNTHPOP_HPP_
#define VRCLOAK_SYNTHPOP_HPP_

#include <cstdint>
#include <vector>

#include "vrcloak/telemetry.hpp"
#include "vrcloak/transforms.hpp"

namespace vrcloak {

struct SyntheticUser {
  int id = 0;
  GroundTruth truth;
  double reaction_ms = 250;
  double device_rate_hz = 90;
  int squat_count = 3;
  double jitter_m = 0.005;  // tracking-noise scale
};

enum class PopulationModel { uniform_in_bounds, truncated_normal };

// n users with independent attributes inside the preset bounds; reproducible
// under the seed.
std::vector<SyntheticUser> sample_population(
    int n, std::uint64_t seed, PopulationModel model = PopulationModel::uniform_in_bounds);

// Scripted session at `frame_rate_hz`, with extra event-bearing frames
// inserted at exact stimulus/response timestamps. Throws ValidationError when
// the duration cannot fit the script (minimum 10 s).
std::vector<TelemetryFrame> generate_session(const SyntheticUser& user, double duration_s,
                                             double frame_rate_hz, std::uint64_t seed);

}  // namespace vrcloak

#endif  // VRCLOAK_SYNTHPOP_HPP_
