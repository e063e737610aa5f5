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
// Session lifecycle. The setup phase runs exactly once: all noisy attribute
// values are drawn from per-attribute substreams keyed on
// (master seed, session id, attribute name), and the ground truth is scrubbed
// down to the fields the per-frame transforms require. The update phase
// applies the enabled transforms to every frame in a fixed composition order:
// room -> height -> depth -> wingspan -> arm ratio -> mirror, with IPD and
// pitch as independent channels.

#ifndef VRCLOAK_SESSION_HPP_
#define VRCLOAK_SESSION_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "vrcloak/mechanisms.hpp"
#include "vrcloak/presets.hpp"
#include "vrcloak/transforms.hpp"

namespace vrcloak {

struct DefenseConfig {
  PrivacyLevel level = PrivacyLevel::high;
  std::set<Feature> enabled{kAllFeatures.begin(), kAllFeatures.end()};
  std::map<Feature, double> epsilon_overrides;
  std::uint64_t master_seed = 0;
  // One-time randomization (false) keeps offsets identical across sessions:
  // linkable, but no attribute ever leaks.
  bool rerandomize_per_session = true;

  bool is_enabled(Feature f) const { return level != PrivacyLevel::off && enabled.count(f) > 0; }
  double epsilon_for(Feature f) const;

  // When geolocation and reaction-time clamps are both enabled, the higher
  // clamp protects both.
  double effective_latency_clamp() const;
  double effective_reaction_pad() const;
  double rate_clamp_hz() const;

  void validate() const;
};

struct SessionReport {
  PrivacyLevel level = PrivacyLevel::off;
  std::vector<std::string> enabled_features;
  std::vector<std::pair<std::string, double>> epsilons;
  double budget = 0;
  std::uint64_t frames_processed = 0;
};

class Session {
 public:
  // Draws all per-session noisy values. Throws ValidationError on a bad
  // config or on missing/invalid ground-truth fields (named in the message).
  static Session begin(const DefenseConfig& config, const GroundTruth& truth,
                       std::uint64_t session_id);

  // Applies the enabled transforms. Throws StreamError on a non-monotonic
  // timestamp.
  TelemetryFrame process(const TelemetryFrame& frame);

  SessionReport report() const;

  const SessionOffsets& offsets() const { return offsets_; }
  const BudgetLedger& ledger() const { return ledger_; }
  const DefenseConfig& config() const { return config_; }

 private:
  Session() = default;

  DefenseConfig config_;
  GroundTruth truth_;  // scrubbed: only fields the transforms need survive setup
  SessionOffsets offsets_;
  BudgetLedger ledger_;
  double last_t_ms_ = -1;
  std::uint64_t frames_ = 0;
};

inline Session begin_session(const DefenseConfig& config, const GroundTruth& truth,
                             std::uint64_t session_id) {
  return Session::begin(config, truth, session_id);
}

inline SessionReport session_report(const Session& session) { return session.report(); }

}  // namespace vrcloak

#endif  // VRCLOAK_SESSION_HPP_
