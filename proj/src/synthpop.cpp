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

#include <algorithm>
#include <cmath>

#include "vrcloak/errors.hpp"
#include "vrcloak/presets.hpp"
#include "vrcloak/random.hpp"

namespace vrcloak {

namespace {

// Script phase boundaries as fractions of the session.
constexpr double kStandEnd = 0.15;
constexpr double kSquatEnd = 0.35;
constexpr double kTposeEnd = 0.50;
constexpr double kWalkEnd = 0.90;

constexpr int kInteractionEvents = 20;
constexpr int kReactionPairs = 10;

double uniform_in(RandomSource& rng, double lo, double hi) {
  return lo + rng.uniform_open() * (hi - lo);
}

double gaussian(RandomSource& rng) {
  // Box-Muller on open-interval uniforms.
  double u1 = rng.uniform_open();
  double u2 = rng.uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::acos(-1.0) * u2);
}

double truncated_normal_in(RandomSource& rng, double lo, double hi) {
  double mu = (lo + hi) / 2.0;
  double sd = (hi - lo) / 4.0;
  for (;;) {
    double x = mu + sd * gaussian(rng);
    if (x >= lo && x <= hi) return x;
  }
}

double draw_in(RandomSource& rng, PopulationModel model, double lo, double hi) {
  return model == PopulationModel::uniform_in_bounds ? uniform_in(rng, lo, hi)
                                                     : truncated_normal_in(rng, lo, hi);
}

struct ScriptPose {
  Eigen::Vector3d head;
  Eigen::Vector3d right;
  Eigen::Vector3d left;
};

// Deterministic pose as a pure function of time; jitter is added at emission.
ScriptPose script_pose(const SyntheticUser& user, double t_ms, double duration_ms) {
  const GroundTruth& t = user.truth;
  double tau = t_ms / duration_ms;
  ScriptPose p;
  p.head = Eigen::Vector3d(0, t.height, 0);
  // Hands hang near the body unless the phase says otherwise.
  auto rest_hands = [&p]() {
    p.right = p.head + Eigen::Vector3d(0.25, -0.55, 0.10);
    p.left = p.head + Eigen::Vector3d(-0.25, -0.55, 0.10);
  };

  if (tau < kStandEnd) {
    rest_hands();
  } else if (tau < kSquatEnd) {
    double local = (tau - kStandEnd) / (kSquatEnd - kStandEnd);
    double dip = (1.0 - std::cos(2.0 * std::acos(-1.0) * user.squat_count * local)) / 2.0;
    p.head.y() = t.height - t.depth * dip;
    rest_hands();
  } else if (tau < kTposeEnd) {
    p.right = p.head + Eigen::Vector3d(t.arm_r, -0.25, 0);
    p.left = p.head + Eigen::Vector3d(-t.arm_l, -0.25, 0);
  } else if (tau < kWalkEnd) {
    // Rectangular circuit: four quarters, each 80% travel to the next corner
    // and 20% dwell on it, so corner frames are exact.
    double local = (tau - kTposeEnd) / (kWalkEnd - kTposeEnd);
    double w = t.room_w / 2.0;
    double l = t.room_l / 2.0;
    Eigen::Vector2d corners[4] = {{-w, -l}, {w, -l}, {w, l}, {-w, l}};
    int quarter = std::min(3, static_cast<int>(local * 4.0));
    double q = local * 4.0 - quarter;
    Eigen::Vector2d from = quarter == 0 ? Eigen::Vector2d(0, 0) : corners[quarter - 1];
    Eigen::Vector2d to = corners[quarter];
    double travel = std::min(1.0, q / 0.8);
    Eigen::Vector2d at = from + travel * (to - from);
    p.head.x() = at.x();
    p.head.z() = at.y();
    rest_hands();
  } else {
    rest_hands();
  }
  return p;
}

TelemetryFrame make_frame(const SyntheticUser& user, double t_ms, double duration_ms,
                          RandomSource& rng) {
  ScriptPose pose = script_pose(user, t_ms, duration_ms);
  TelemetryFrame f;
  f.t_ms = t_ms;
  auto jitter3 = [&user, &rng]() -> Eigen::Vector3d {
    if (user.jitter_m == 0) return Eigen::Vector3d::Zero();
    return Eigen::Vector3d(gaussian(rng), gaussian(rng), gaussian(rng)) * user.jitter_m;
  };
  f.head = pose.head + jitter3();
  f.right = pose.right + jitter3();
  f.left = pose.left + jitter3();
  // Eyes ride rigidly on the (jittered) head; the gap stays exactly the IPD.
  double half_gap = user.truth.ipd / 2000.0;
  EyePair eyes;
  eyes.left = f.head + Eigen::Vector3d(-half_gap, -0.04, 0.03);
  eyes.right = f.head + Eigen::Vector3d(half_gap, -0.04, 0.03);
  f.eyes = eyes;
  f.pitch_hz = user.truth.pitch;
  return f;
}

}  // namespace

std::vector<SyntheticUser> sample_population(int n, std::uint64_t seed, PopulationModel model) {
  if (n < 1) throw ValidationError("sample_population: n must be >= 1");
  std::vector<SyntheticUser> users;
  users.reserve(static_cast<std::size_t>(n));
  RandomSource root(seed);
  for (int i = 0; i < n; ++i) {
    RandomSource rng = root.derive(static_cast<std::uint64_t>(i), "user");
    SyntheticUser u;
    u.id = i;
    const AttributePreset& height = preset_for(Feature::height);
    const AttributePreset& span = preset_for(Feature::wingspan);
    const AttributePreset& ratio = preset_for(Feature::arm_ratio);
    const AttributePreset& ipd = preset_for(Feature::ipd);
    const AttributePreset& pitch = preset_for(Feature::pitch);
    u.truth.height = draw_in(rng, model, height.lower, height.upper);
    double wing = draw_in(rng, model, span.lower, span.upper);
    double r = draw_in(rng, model, ratio.lower, ratio.upper);
    u.truth.arm_r = wing * r;
    u.truth.arm_l = wing - u.truth.arm_r;
    u.truth.ipd = draw_in(rng, model, ipd.lower, ipd.upper);
    u.truth.pitch = draw_in(rng, model, pitch.lower, pitch.upper);
    // Degenerate lower bounds (0 m squat, 0 m room) are valid noise bounds but
    // unusable ground truth; sample away from them.
    u.truth.depth = draw_in(rng, model, 0.25, preset_for(Feature::depth).upper);
    u.truth.room_w = draw_in(rng, model, 2.0, preset_for(Feature::room).upper);
    u.truth.room_l = draw_in(rng, model, 2.0, preset_for(Feature::room).upper);
    u.truth.right_handed = rng.uniform_open() < 0.88;
    u.reaction_ms = uniform_in(rng, 150, 400);
    constexpr double kDeviceRates[4] = {120, 90, 80, 72};
    u.device_rate_hz = kDeviceRates[rng.next_u64() % 4];
    users.push_back(u);
  }
  return users;
}

std::vector<TelemetryFrame> generate_session(const SyntheticUser& user, double duration_s,
                                             double frame_rate_hz, std::uint64_t seed) {
  if (duration_s < 10.0) {
    throw ValidationError("generate_session: duration too short for script (min 10 s)");
  }
  if (!(frame_rate_hz > 0)) {
    throw ValidationError("generate_session: frame rate must be positive");
  }
  validate_ground_truth(user.truth);

  double duration_ms = duration_s * 1000.0;
  double interval_ms = 1000.0 / frame_rate_hz;

  // Stimulus/response pairs live after the squat phase; each needs the user's
  // reaction time plus slack before the next stimulus.
  double pair_window_ms = duration_ms * (1.0 - kSquatEnd);
  double pair_slot_ms = pair_window_ms / kReactionPairs;
  if (pair_slot_ms < user.reaction_ms + 100.0) {
    throw ValidationError("generate_session: duration too short for script (reaction pairs)");
  }

  RandomSource rng = RandomSource(seed).derive(static_cast<std::uint64_t>(user.id), "session");

  std::vector<TelemetryFrame> frames;
  auto n_grid = static_cast<std::size_t>(duration_s * frame_rate_hz);
  frames.reserve(n_grid + 2 * kReactionPairs);
  for (std::size_t i = 0; i < n_grid; ++i) {
    frames.push_back(make_frame(user, static_cast<double>(i) * interval_ms, duration_ms, rng));
  }

  // Interaction events ride on walk-phase grid frames with the dominant hand
  // in a 90% majority.
  Hand dominant = user.truth.right_handed ? Hand::right : Hand::left;
  Hand other = user.truth.right_handed ? Hand::left : Hand::right;
  std::size_t walk_begin = static_cast<std::size_t>(kTposeEnd * static_cast<double>(n_grid));
  std::size_t walk_len = static_cast<std::size_t>((kWalkEnd - kTposeEnd) * static_cast<double>(n_grid));
  for (int e = 0; e < kInteractionEvents; ++e) {
    std::size_t idx = walk_begin + (walk_len * static_cast<std::size_t>(e)) / kInteractionEvents;
    Hand hand = (e % 10 == 5) ? other : dominant;
    frames[std::min(idx, n_grid - 1)].events.push_back(Event{EventKind::interaction, hand});
  }

  // Event-bearing frames at exact stimulus/response timestamps, inserted off
  // the grid so reaction recovery is exact on undefended streams.
  std::vector<TelemetryFrame> extra;
  double pairs_start_ms = duration_ms * kSquatEnd;
  for (int p = 0; p < kReactionPairs; ++p) {
    double stim_ms = pairs_start_ms + p * pair_slot_ms + 0.37 * interval_ms;
    double resp_ms = stim_ms + user.reaction_ms;
    TelemetryFrame stim = make_frame(user, stim_ms, duration_ms, rng);
    stim.events.push_back(Event{EventKind::stimulus, Hand::none});
    TelemetryFrame resp = make_frame(user, resp_ms, duration_ms, rng);
    resp.events.push_back(Event{EventKind::response, dominant});
    extra.push_back(std::move(stim));
    extra.push_back(std::move(resp));
  }

  for (TelemetryFrame& ef : extra) {
    auto it = std::lower_bound(frames.begin(), frames.end(), ef.t_ms,
                               [](const TelemetryFrame& f, double t) { return f.t_ms < t; });
    if (it != frames.end() && it->t_ms == ef.t_ms) {
      it->events.insert(it->events.end(), ef.events.begin(), ef.events.end());
    } else {
      frames.insert(it, std::move(ef));
    }
  }
  return frames;
}

}  // namespace vrcloak
