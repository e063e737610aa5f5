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
// vrcloak command line: synthesize telemetry, replay recordings through the
// privacy defenses, run the adversary suite, and drive experiments.
// Exit codes: 0 success, 2 validation error, 1 runtime error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vrcloak/errors.hpp"
#include "vrcloak/harness.hpp"

namespace {

using namespace vrcloak;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

int cmd_synth(int users, double duration, std::uint64_t seed, double rate,
              const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto population = sample_population(users, seed);
  std::ofstream truth_csv(std::filesystem::path(out_dir) / "truth.csv");
  if (!truth_csv) throw StreamError("cannot write truth.csv in " + out_dir);
  truth_csv << "user,height,arm_r,arm_l,wingspan,arm_ratio,ipd_mm,pitch_hz,depth,room_w,room_l,"
               "right_handed,reaction_ms,device_rate_hz\n";
  for (const SyntheticUser& u : population) {
    double user_rate = rate > 0 ? rate : u.device_rate_hz;
    auto frames = generate_session(u, duration, user_rate, seed);
    char name[40];
    std::snprintf(name, sizeof name, "user_%03d.txt", u.id);
    write_telemetry_file(std::filesystem::path(out_dir) / name, frames);
    char truth_name[40];
    std::snprintf(truth_name, sizeof truth_name, "user_%03d.truth", u.id);
    write_truth_file(std::filesystem::path(out_dir) / truth_name, u.truth);
    char line[512];
    std::snprintf(line, sizeof line, "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d,%.9g,%.9g\n",
                  u.id, u.truth.height, u.truth.arm_r, u.truth.arm_l, u.truth.wingspan(),
                  u.truth.arm_ratio(), u.truth.ipd, u.truth.pitch, u.truth.depth, u.truth.room_w,
                  u.truth.room_l, u.truth.right_handed ? 1 : 0, u.reaction_ms, u.device_rate_hz);
    truth_csv << line;
  }
  std::cout << "wrote " << users << " sessions to " << out_dir << "\n";
  return 0;
}

int cmd_replay(const std::string& in, const std::string& config, const std::string& out,
               const std::string& level, const std::string& features, std::uint64_t seed,
               bool seed_set) {
  ReplayOverrides overrides;
  if (!level.empty()) overrides.level = level_from_string(level);
  if (!features.empty()) {
    std::vector<Feature> fs;
    for (const std::string& name : split_csv(features)) fs.push_back(feature_from_string(name));
    overrides.features = fs;
  }
  if (seed_set) overrides.seed = seed;
  ReplaySummary summary = replay_file(in, config, out, overrides);
  std::cout << session_report_json(summary.report) << "\n";
  std::cout << "wrote " << summary.frames_written << " frames to " << out << "\n";
  return 0;
}

int cmd_attack(const std::string& in, const std::string& truth_path, const std::string& attacks,
               const std::string& out) {
  auto frames = read_telemetry_file(in);
  std::vector<std::string> wanted =
      attacks.empty() ? std::vector<std::string>{"height", "wingspan", "ipd", "room", "depth",
                                                 "pitch", "arm_ratio", "handedness", "reaction",
                                                 "refresh_rate"}
                      : split_csv(attacks);
  SessionEstimates est = harvest_session(frames);
  std::optional<GroundTruth> truth;
  if (!truth_path.empty()) truth = load_truth_file(truth_path);

  std::vector<AttributeEstimate> lines;
  auto emit = [&lines](const std::string& name, const std::optional<double>& v,
                       const std::string& unit) {
    if (v) lines.push_back(AttributeEstimate{name, *v, unit});
  };
  for (const std::string& a : wanted) {
    if (a == "height") {
      emit(a, est.height, "m");
    } else if (a == "wingspan") {
      emit(a, est.wingspan, "m");
    } else if (a == "ipd") {
      emit(a, est.ipd, "mm");
    } else if (a == "room") {
      emit("room_w", est.room_w, "m");
      emit("room_l", est.room_l, "m");
    } else if (a == "depth") {
      emit(a, est.depth, "m");
    } else if (a == "pitch") {
      emit(a, est.pitch, "Hz");
    } else if (a == "arm_ratio") {
      emit(a, est.arm_ratio, "");
    } else if (a == "handedness") {
      if (est.right_handed) {
        lines.push_back(AttributeEstimate{a, *est.right_handed ? 1.0 : 0.0, "right=1"});
      }
    } else if (a == "reaction") {
      emit(a, est.reaction, "ms");
    } else if (a == "refresh_rate") {
      emit(a, est.refresh_rate, "Hz");
    } else {
      throw ValidationError("unknown attack: " + a);
    }
  }

  std::ostringstream body;
  for (const AttributeEstimate& e : lines) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.9g %s\n", e.attribute.c_str(), e.value, e.unit.c_str());
    body << buf;
  }
  if (truth) {
    char buf[256];
    auto err = [&](const std::string& name, double est_v, double truth_v) {
      std::snprintf(buf, sizeof buf, "error %s %.9g\n", name.c_str(), est_v - truth_v);
      body << buf;
    };
    if (est.height) err("height", *est.height, truth->height);
    if (est.wingspan) err("wingspan", *est.wingspan, truth->wingspan());
    if (est.ipd) err("ipd", *est.ipd, truth->ipd);
  }
  std::cout << body.str();
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw StreamError("cannot write report: " + out);
    f << body.str();
  }
  return 0;
}

int cmd_experiment(const std::string& spec_path) {
  ExperimentSpec spec = load_experiment_spec(spec_path);
  AttackReport report = run_experiment(spec);
  std::cout << report.to_csv();
  return 0;
}

int cmd_sweep(const std::string& attribute, const std::string& epsilons, int users, double duration,
              std::uint64_t seed, const std::string& out) {
  std::vector<double> eps;
  for (const std::string& tok : split_csv(epsilons)) {
    eps.push_back(std::stod(tok));
  }
  ExperimentSpec spec;
  spec.users = users;
  spec.duration_s = duration;
  spec.population_seed = seed;
  spec.session_seed = seed + 1;
  spec.defense_seed = seed + 2;
  spec.levels = {PrivacyLevel::high};
  spec.attacks = {"height"};
  auto curve = epsilon_sweep(feature_from_string(attribute), eps, spec);
  std::string csv = sweep_to_csv(curve);
  std::cout << csv;
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw StreamError("cannot write sweep: " + out);
    f << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vrcloak: local-DP privacy defenses for VR telemetry, with an attack harness"};
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic population and sessions");
  int users = 10;
  double duration = 60;
  std::uint64_t seed = 1;
  double rate = 0;
  std::string out_dir = "synth_out";
  synth->add_option("--users", users, "Population size");
  synth->add_option("--duration", duration, "Session duration in seconds");
  synth->add_option("--seed", seed, "Generation seed");
  synth->add_option("--rate", rate, "Frame rate (0: per-user device rate)");
  synth->add_option("--out", out_dir, "Output directory");

  auto* replay = app.add_subcommand("replay", "Defend a recording at a privacy level");
  std::string in_path;
  std::string config_path;
  std::string out_path;
  std::string level;
  std::string features;
  std::uint64_t replay_seed = 0;
  replay->add_option("--in", in_path, "Input telemetry file")->required();
  replay->add_option("--config", config_path, "Session config file")->required();
  replay->add_option("--out", out_path, "Output telemetry file")->required();
  replay->add_option("--level", level, "Override privacy level (off|low|medium|high)");
  replay->add_option("--features", features, "Override enabled features (comma list)");
  auto* seed_opt = replay->add_option("--seed", replay_seed, "Override master seed");

  auto* attack = app.add_subcommand("attack", "Run attribute-harvesting attacks on a recording");
  std::string attack_in;
  std::string truth_path;
  std::string attacks;
  std::string attack_out;
  attack->add_option("--in", attack_in, "Input telemetry file")->required();
  attack->add_option("--truth", truth_path, "Ground-truth file for error reporting");
  attack->add_option("--attacks", attacks, "Attacks to run (comma list; default: all deterministic)");
  attack->add_option("--out", attack_out, "Write estimates to this file");

  auto* experiment = app.add_subcommand("experiment", "Run a full experiment from a spec file");
  std::string spec_path;
  experiment->add_option("--spec", spec_path, "Experiment spec file")->required();

  auto* sweep = app.add_subcommand("sweep", "Epsilon sweep: attacker R^2 vs epsilon");
  std::string attribute = "height";
  std::string epsilons = "0.1,1,3,5";
  int sweep_users = 300;
  double sweep_duration = 20;
  std::uint64_t sweep_seed = 7;
  std::string sweep_out;
  sweep->add_option("--attribute", attribute, "Attribute to sweep");
  sweep->add_option("--epsilons", epsilons, "Comma list of epsilon values");
  sweep->add_option("--users", sweep_users, "Population size");
  sweep->add_option("--duration", sweep_duration, "Session duration in seconds");
  sweep->add_option("--seed", sweep_seed, "Seed");
  sweep->add_option("--out", sweep_out, "Write curve CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (synth->parsed()) return cmd_synth(users, duration, seed, rate, out_dir);
    if (replay->parsed())
      return cmd_replay(in_path, config_path, out_path, level, features, replay_seed,
                        seed_opt->count() > 0);
    if (attack->parsed()) return cmd_attack(attack_in, truth_path, attacks, attack_out);
    if (experiment->parsed()) return cmd_experiment(spec_path);
    if (sweep->parsed())
      return cmd_sweep(attribute, epsilons, sweep_users, sweep_duration, sweep_seed, sweep_out);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
