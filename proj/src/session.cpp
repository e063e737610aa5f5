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

#include <algorithm>
#include <cmath>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0) || !std::isfinite(v)) {
    throw ValidationError(std::string("missing or invalid ground truth field: ") + field);
  }
}

void validate_truth_for(Feature f, const GroundTruth& t) {
  switch (f) {
    case Feature::height:
      require_positive(t.height, "height");
      break;
    case Feature::depth:
      require_positive(t.depth, "depth");
      require_positive(t.height, "height");
      break;
    case Feature::wingspan:
      require_positive(t.arm_r, "arm_r");
      require_positive(t.arm_l, "arm_l");
      break;
    case Feature::arm_ratio:
      require_positive(t.arm_r, "arm_r");
      require_positive(t.arm_l, "arm_l");
      break;
    case Feature::room:
      require_positive(t.room_w, "room_w");
      require_positive(t.room_l, "room_l");
      break;
    case Feature::ipd:
      require_positive(t.ipd, "ipd");
      break;
    case Feature::pitch:
      require_positive(t.pitch, "pitch");
      break;
    default:
      break;
  }
}

double translate_depth_offset(double y_h, const GroundTruth& t, const SessionOffsets& o) {
  return (t.height - ((t.height - y_h) / t.depth) * o.depth) - y_h;
}

void shift_frame_y(TelemetryFrame& f, double dy) {
  f.head.y() += dy;
  f.right.y() += dy;
  f.left.y() += dy;
  if (f.eyes) {
    f.eyes->left.y() += dy;
    f.eyes->right.y() += dy;
  }
}

}  // namespace

double DefenseConfig::epsilon_for(Feature f) const {
  auto it = epsilon_overrides.find(f);
  if (it != epsilon_overrides.end()) return it->second;
  return preset_epsilon(f, level);
}

double DefenseConfig::effective_latency_clamp() const {
  double clamp = preset_clamp(Feature::latency_geo, level);
  if (is_enabled(Feature::reaction_time)) {
    clamp = std::max(clamp, preset_clamp(Feature::reaction_time, level));
  }
  return clamp;
}

double DefenseConfig::effective_reaction_pad() const {
  double pad = preset_clamp(Feature::reaction_time, level);
  if (is_enabled(Feature::latency_geo)) {
    pad = std::max(pad, preset_clamp(Feature::latency_geo, level));
  }
  return pad;
}

double DefenseConfig::rate_clamp_hz() const { return preset_clamp(Feature::rate_clamp, level); }

void DefenseConfig::validate() const {
  for (const auto& [f, eps] : epsilon_overrides) {
    if (!(eps > 0) || !std::isfinite(eps)) {
      throw ValidationError("invalid config: epsilon override for " + to_string(f) +
                            " must be positive");
    }
    if (!consumes_epsilon(f)) {
      throw ValidationError("invalid config: clamp feature " + to_string(f) +
                            " takes no epsilon override");
    }
  }
}

Session Session::begin(const DefenseConfig& config, const GroundTruth& truth,
                       std::uint64_t session_id) {
  config.validate();

  Session s;
  s.config_ = config;

  // Setup phase: one-time draws. Scrub ground truth down to the fields the
  // update phase requires; everything else is discarded here.
  s.truth_ = GroundTruth{};
  s.truth_.height = truth.height;
  s.truth_.depth = truth.depth;
  s.truth_.arm_r = truth.arm_r;
  s.truth_.arm_l = truth.arm_l;
  s.truth_.room_w = truth.room_w;
  s.truth_.room_l = truth.room_l;

  s.offsets_ = identity_offsets(truth);
  if (config.level == PrivacyLevel::off) {
    return s;
  }

  for (Feature f : kAllFeatures) {
    if (config.is_enabled(f) && consumes_epsilon(f)) {
      validate_truth_for(f, truth);
    }
  }

  std::uint64_t sid = config.rerandomize_per_session ? session_id : 0;
  RandomSource root(config.master_seed);
  auto draw = [&](Feature f, const char* label, double value) {
    const AttributePreset& p = preset_for(f);
    PrivacyParams params = PrivacyParams::for_bounds(config.epsilon_for(f), p.lower, p.upper);
    RandomSource rng = root.derive(sid, label);
    return bounded_laplace(value, params, rng);
  };

  if (config.is_enabled(Feature::height)) {
    s.offsets_.height = draw(Feature::height, "height", truth.height);
    s.ledger_.add("height", config.epsilon_for(Feature::height));
  }
  if (config.is_enabled(Feature::depth)) {
    s.offsets_.depth = draw(Feature::depth, "depth", truth.depth);
    s.ledger_.add("depth", config.epsilon_for(Feature::depth));
  }
  if (config.is_enabled(Feature::wingspan)) {
    s.offsets_.span = draw(Feature::wingspan, "wingspan", truth.wingspan());
    s.ledger_.add("wingspan", config.epsilon_for(Feature::wingspan));
  }
  if (config.is_enabled(Feature::arm_ratio)) {
    s.offsets_.ratio = draw(Feature::arm_ratio, "arm_ratio", truth.arm_ratio());
    s.ledger_.add("arm_ratio", config.epsilon_for(Feature::arm_ratio));
  }
  if (config.is_enabled(Feature::room)) {
    // Width and length noise are drawn independently, so even the room's
    // proportions stay private.
    s.offsets_.room_w = draw(Feature::room, "room_w", truth.room_w);
    s.offsets_.room_l = draw(Feature::room, "room_l", truth.room_l);
    s.ledger_.add("room", config.epsilon_for(Feature::room));
  }
  if (config.is_enabled(Feature::ipd)) {
    s.offsets_.ipd_offset = draw(Feature::ipd, "ipd", truth.ipd) - truth.ipd;
    s.ledger_.add("ipd", config.epsilon_for(Feature::ipd));
  }
  if (config.is_enabled(Feature::pitch)) {
    s.offsets_.pitch_offset = draw(Feature::pitch, "pitch", truth.pitch) - truth.pitch;
    s.ledger_.add("pitch", config.epsilon_for(Feature::pitch));
  }
  if (config.is_enabled(Feature::handedness)) {
    double eps = config.epsilon_for(Feature::handedness);
    RandomSource rng = root.derive(sid, "handedness");
    bool reported = randomized_response(truth.right_handed, rr_bias_for_epsilon(eps), rng);
    s.offsets_.mirrored = reported != truth.right_handed;
    s.ledger_.add("handedness", eps);
  }
  return s;
}

TelemetryFrame Session::process(const TelemetryFrame& frame) {
  if (frame.t_ms <= last_t_ms_) {
    throw StreamError("stream error: non-monotonic timestamp " + std::to_string(frame.t_ms));
  }
  last_t_ms_ = frame.t_ms;
  ++frames_;

  if (config_.level == PrivacyLevel::off) {
    return frame;
  }

  TelemetryFrame out = frame;
  if (config_.is_enabled(Feature::room)) {
    out = apply_room(out, truth_, offsets_);
  }
  // The squat-depth offset is computed against pre-height-noise coordinates;
  // the two vertical defenses are independent and their offsets add.
  double y_pre = out.head.y();
  if (config_.is_enabled(Feature::height)) {
    out = apply_height(out, truth_, offsets_);
  }
  if (config_.is_enabled(Feature::depth)) {
    shift_frame_y(out, translate_depth_offset(y_pre, truth_, offsets_));
  }
  if (config_.is_enabled(Feature::wingspan)) {
    out = apply_wingspan(out, truth_, offsets_);
  }
  if (config_.is_enabled(Feature::arm_ratio)) {
    out = apply_arm_ratio(out, truth_, offsets_);
  }
  if (config_.is_enabled(Feature::handedness)) {
    out = apply_mirror(out, offsets_);
  }
  if (config_.is_enabled(Feature::ipd)) {
    out = apply_ipd(out, offsets_);
  }
  if (config_.is_enabled(Feature::pitch)) {
    out = apply_pitch(out, offsets_);
  }
  return out;
}

SessionReport Session::report() const {
  SessionReport r;
  r.level = config_.level;
  if (config_.level != PrivacyLevel::off) {
    for (Feature f : kAllFeatures) {
      if (!config_.is_enabled(f)) continue;
      r.enabled_features.push_back(to_string(f));
      if (consumes_epsilon(f)) {
        r.epsilons.emplace_back(to_string(f), config_.epsilon_for(f));
      }
    }
  }
  r.budget = budget_total(ledger_);
  r.frames_processed = frames_;
  return r;
}

}  // namespace vrcloak
