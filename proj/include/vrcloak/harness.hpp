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
// Experiment orchestration: synthesize a population, replay scripted
// sessions through the defenses at each privacy level, run the adversary
// suite, and emit accuracy/R-squared reports with bootstrap confidence
// intervals. Everything is keyed to explicit seeds; identical specs produce
// byte-identical reports.

#ifndef VRCLOAK_HARNESS_HPP_
#define VRCLOAK_HARNESS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vrcloak/adversary.hpp"
#include "vrcloak/config.hpp"
#include "vrcloak/netshield.hpp"
#include "vrcloak/session.hpp"
#include "vrcloak/stats.hpp"
#include "vrcloak/synthpop.hpp"

namespace vrcloak {

// Attacks the harness understands. "identity" needs >= 2 sessions per user.
extern const std::vector<std::string> kKnownAttacks;

struct ExperimentSpec {
  int users = 100;
  int sessions_per_user = 1;
  double duration_s = 60;
  double frame_rate_hz = 0;  // 0: use each user's device rate
  PopulationModel model = PopulationModel::uniform_in_bounds;
  double jitter_mm = 5;
  std::vector<PrivacyLevel> levels;
  std::vector<std::string> attacks;
  std::uint64_t population_seed = 1;
  std::uint64_t session_seed = 2;
  std::uint64_t defense_seed = 3;
  std::uint64_t bootstrap_seed = 4;
  std::string out_csv;
  std::string out_json;

  void validate() const;
};

ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct MetricRow {
  std::string attack;
  std::string metric;
  PrivacyLevel level = PrivacyLevel::off;
  double value = 0;
  ConfidenceInterval ci;
};

struct AttackReport {
  std::vector<MetricRow> rows;

  std::string to_csv() const;
  std::string to_json_string() const;
  std::optional<double> value(const std::string& attack, const std::string& metric,
                              PrivacyLevel level) const;
};

// Runs the full experiment; writes CSV/JSON when the spec names output paths.
AttackReport run_experiment(const ExperimentSpec& spec);

// Everything measured about one defended session.
struct SessionEstimates {
  std::optional<double> height, wingspan, arm_ratio, ipd, room_w, room_l, depth, pitch, reaction,
      refresh_rate;
  std::optional<bool> right_handed;
  std::optional<LongerArm> longer_arm;
  FeatureVector features;
};

// Applies the per-frame defenses and the enabled stream clamps, exactly as
// run_experiment does.
std::vector<TelemetryFrame> defend_stream(const std::vector<TelemetryFrame>& frames,
                                          Session& session);

SessionEstimates harvest_session(std::span<const TelemetryFrame> stream);

struct SweepPoint {
  double epsilon = 0;
  double r2 = 0;
};

// Attacker R-squared on defended streams versus ground truth across the
// population, per epsilon, with only `attribute`'s defense enabled.
std::vector<SweepPoint> epsilon_sweep(Feature attribute, const std::vector<double>& epsilons,
                                      const ExperimentSpec& spec);

std::string sweep_to_csv(const std::vector<SweepPoint>& curve);

struct ReplayOverrides {
  std::optional<PrivacyLevel> level;
  std::optional<std::vector<Feature>> features;
  std::optional<std::uint64_t> seed;
};

struct ReplaySummary {
  SessionReport report;
  SessionOffsets offsets;
  std::size_t frames_written = 0;
};

// Reads a recording, defends it under the config (ground truth from the
// config's [truth] section, else estimated from the recording itself), and
// writes the defended stream with the session report appended as a trailing
// comment line.
ReplaySummary replay_file(const std::filesystem::path& input,
                          const std::filesystem::path& config_path,
                          const std::filesystem::path& output, const ReplayOverrides& overrides = {});

// Ground truth from a recording via the attack estimators; degenerate fields
// fall back to preset midpoints so transforms stay well-defined.
GroundTruth estimate_truth_from_stream(std::span<const TelemetryFrame> stream);

std::string session_report_json(const SessionReport& report);

}  // namespace vrcloak

#endif  // VRCLOAK_HARNESS_HPP_
