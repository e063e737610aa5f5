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

#include "vrcloak/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

using nlohmann::json;

constexpr double kGeoBoxKm = 1500.0;

// Anchor geometry for the geolocation attack. The farthest user/anchor pair
// (4 corners apart, ~3536 km) keeps every intrinsic two-way RTT under the
// smallest latency clamp (25 ms ~ 3750 km), so clamping flattens the
// residual surface at every level.
const std::vector<Eigen::Vector2d> kGeoAnchors = {
    {0, 0}, {2500, 0}, {0, 2500}, {2500, 2500}};

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

double rate_for(const ExperimentSpec& spec, const SyntheticUser& user) {
  return spec.frame_rate_hz > 0 ? spec.frame_rate_hz : user.device_rate_hz;
}

std::uint64_t session_seed_for(const ExperimentSpec& spec, int user_id, int rep) {
  return RandomSource(spec.session_seed)
      .derive(static_cast<std::uint64_t>(user_id), "user")
      .derive(static_cast<std::uint64_t>(rep), "rep")
      .seed();
}

std::uint64_t defense_seed_for(const ExperimentSpec& spec, int user_id) {
  return RandomSource(spec.defense_seed).derive(static_cast<std::uint64_t>(user_id), "defense").seed();
}

DefenseConfig experiment_config(const ExperimentSpec& spec, PrivacyLevel level, int user_id) {
  DefenseConfig cfg;
  cfg.level = level;
  cfg.master_seed = defense_seed_for(spec, user_id);
  return cfg;
}

struct UserRun {
  std::vector<SessionEstimates> sessions;
  double geo_error_km = 0;
  bool geo_valid = false;
};

// Per-user accuracy indicator (0/1) with bootstrap CI; absent estimates
// count as misses.
struct Column {
  std::vector<double> correct;
  std::vector<double> truth;     // users with a present estimate
  std::vector<double> estimate;
};

double pct(std::span<const double> correct) {
  if (correct.empty()) return 0;
  return 100.0 * mean(correct);
}

double safe_r2(std::span<const double> truth, std::span<const double> est) {
  if (truth.size() < 2) return 0;
  double m = mean(truth);
  double ss_res = 0;
  double ss_tot = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_res += (truth[i] - est[i]) * (truth[i] - est[i]);
    ss_tot += (truth[i] - m) * (truth[i] - m);
  }
  if (ss_tot == 0) return 0;
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

const std::vector<std::string> kKnownAttacks = {
    "height",   "wingspan",     "ipd",     "room",        "depth",
    "pitch",    "arm_ratio",    "longer_arm", "handedness", "reaction",
    "refresh_rate", "geolocation", "identity"};

void ExperimentSpec::validate() const {
  if (users < 1) throw ValidationError("experiment spec: users must be >= 1");
  if (sessions_per_user < 1) throw ValidationError("experiment spec: sessions_per_user must be >= 1");
  if (duration_s < 10) throw ValidationError("experiment spec: duration_s must be >= 10");
  if (levels.empty()) throw ValidationError("experiment spec: need at least one privacy level");
  if (attacks.empty()) throw ValidationError("experiment spec: need at least one attack");
  for (const std::string& a : attacks) {
    if (std::find(kKnownAttacks.begin(), kKnownAttacks.end(), a) == kKnownAttacks.end()) {
      throw ValidationError("experiment spec: unknown attack '" + a + "'");
    }
  }
  bool identity = std::find(attacks.begin(), attacks.end(), "identity") != attacks.end();
  if (identity && sessions_per_user < 2) {
    throw ValidationError("experiment spec: identity attack needs sessions_per_user >= 2");
  }
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  IniSections ini = parse_ini_file(path);
  ExperimentSpec spec;
  std::string ctx = path.string();
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t a = item.find_first_not_of(" \t");
      std::size_t b = item.find_last_not_of(" \t");
      if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
  };
  for (const auto& [name, section] : ini) {
    if (name == "population") {
      for (const auto& [key, value] : section) {
        std::string where = ctx + " [population] " + key;
        if (key == "users") {
          spec.users = static_cast<int>(parse_number(value, where));
        } else if (key == "sessions_per_user") {
          spec.sessions_per_user = static_cast<int>(parse_number(value, where));
        } else if (key == "duration_s") {
          spec.duration_s = parse_number(value, where);
        } else if (key == "frame_rate_hz") {
          spec.frame_rate_hz = parse_number(value, where);
        } else if (key == "jitter_mm") {
          spec.jitter_mm = parse_number(value, where);
        } else if (key == "model") {
          if (value == "uniform") {
            spec.model = PopulationModel::uniform_in_bounds;
          } else if (value == "truncated_normal") {
            spec.model = PopulationModel::truncated_normal;
          } else {
            throw ValidationError(where + ": unknown model '" + value + "'");
          }
        } else {
          throw ValidationError(where + ": unknown key");
        }
      }
    } else if (name == "levels") {
      for (const auto& [key, value] : section) {
        if (key != "levels") throw ValidationError(ctx + " [levels]: unknown key '" + key + "'");
        for (const std::string& l : split_list(value)) spec.levels.push_back(level_from_string(l));
      }
    } else if (name == "attacks") {
      for (const auto& [key, value] : section) {
        if (key != "attacks") throw ValidationError(ctx + " [attacks]: unknown key '" + key + "'");
        spec.attacks = split_list(value);
      }
    } else if (name == "seeds") {
      for (const auto& [key, value] : section) {
        std::string where = ctx + " [seeds] " + key;
        auto u64 = static_cast<std::uint64_t>(parse_number(value, where));
        if (key == "population") {
          spec.population_seed = u64;
        } else if (key == "session") {
          spec.session_seed = u64;
        } else if (key == "defense") {
          spec.defense_seed = u64;
        } else if (key == "bootstrap") {
          spec.bootstrap_seed = u64;
        } else {
          throw ValidationError(where + ": unknown key");
        }
      }
    } else if (name == "output") {
      for (const auto& [key, value] : section) {
        if (key == "csv") {
          spec.out_csv = value;
        } else if (key == "json") {
          spec.out_json = value;
        } else {
          throw ValidationError(ctx + " [output]: unknown key '" + key + "'");
        }
      }
    } else {
      throw ValidationError(ctx + ": unknown section [" + name + "]");
    }
  }
  spec.validate();
  return spec;
}

std::vector<TelemetryFrame> defend_stream(const std::vector<TelemetryFrame>& frames,
                                          Session& session) {
  std::vector<TelemetryFrame> out;
  out.reserve(frames.size());
  for (const TelemetryFrame& f : frames) {
    out.push_back(session.process(f));
  }
  const DefenseConfig& cfg = session.config();
  if (cfg.is_enabled(Feature::reaction_time)) {
    out = clamp_reaction(out, cfg.effective_reaction_pad()).frames;
  }
  if (cfg.is_enabled(Feature::rate_clamp)) {
    out = clamp_rate(out, cfg.rate_clamp_hz()).frames;
  }
  if (cfg.is_enabled(Feature::latency_geo)) {
    bool has_rtt = !out.empty() && out.front().rtt_ms.has_value();
    if (has_rtt) {
      double clamp = cfg.effective_latency_clamp();
      for (TelemetryFrame& f : out) {
        if (f.rtt_ms) f.rtt_ms = std::max(*f.rtt_ms, clamp);
      }
    }
  }
  return out;
}

SessionEstimates harvest_session(std::span<const TelemetryFrame> stream) {
  SessionEstimates e;
  auto attempt = [](auto&& fn) {
    try {
      fn();
    } catch (const ValidationError&) {
    }
  };
  attempt([&] {
    e.height = estimate_height(stream);
    e.depth = estimate_depth(stream, *e.height);
  });
  attempt([&] { e.wingspan = estimate_wingspan(stream); });
  attempt([&] {
    auto [r, l] = estimate_arm_extents(stream);
    if (r + l > 0) e.arm_ratio = r / (r + l);
  });
  attempt([&] { e.ipd = estimate_ipd(stream); });
  attempt([&] {
    auto [w, l] = estimate_room(stream);
    e.room_w = w;
    e.room_l = l;
  });
  attempt([&] { e.pitch = estimate_pitch(stream); });
  attempt([&] { e.reaction = estimate_reaction(stream); });
  attempt([&] { e.refresh_rate = estimate_refresh_rate(stream); });
  attempt([&] { e.right_handed = estimate_handedness(stream); });
  attempt([&] { e.longer_arm = estimate_longer_arm(stream); });

  auto put = [&e](int i, const std::optional<double>& v) {
    if (v) {
      e.features.values(i) = *v;
      e.features.present[static_cast<std::size_t>(i)] = true;
    }
  };
  put(0, e.height);
  put(1, e.wingspan);
  put(2, e.arm_ratio);
  put(3, e.ipd);
  put(4, e.room_w);
  put(5, e.room_l);
  put(6, e.depth);
  put(7, e.pitch);
  put(8, e.reaction);
  put(9, e.refresh_rate);
  return e;
}

namespace {

UserRun run_user(const ExperimentSpec& spec, const SyntheticUser& user, PrivacyLevel level,
                 bool want_geo) {
  UserRun run;
  for (int s = 0; s < spec.sessions_per_user; ++s) {
    auto raw = generate_session(user, spec.duration_s, rate_for(spec, user),
                                session_seed_for(spec, user.id, s));
    Session session = Session::begin(experiment_config(spec, level, user.id), user.truth,
                                     static_cast<std::uint64_t>(s));
    auto defended = defend_stream(raw, session);
    run.sessions.push_back(harvest_session(defended));
  }
  if (want_geo) {
    RandomSource geo_rng = RandomSource(spec.population_seed)
                               .derive(static_cast<std::uint64_t>(user.id), "geo");
    Eigen::Vector2d pos(geo_rng.uniform_open() * kGeoBoxKm, geo_rng.uniform_open() * kGeoBoxKm);
    DefenseConfig cfg = experiment_config(spec, level, user.id);
    std::vector<GeoAnchor> anchors;
    anchors.reserve(kGeoAnchors.size());
    for (const Eigen::Vector2d& a : kGeoAnchors) {
      double rtt = 2.0 * (pos - a).norm() / kPropagationKmPerMs;
      if (cfg.is_enabled(Feature::latency_geo)) {
        rtt = std::max(rtt, cfg.effective_latency_clamp());
      }
      anchors.push_back(GeoAnchor{a, rtt});
    }
    GeoEstimate est = geolocate(anchors);
    run.geo_error_km = (est.position_km - pos).norm();
    run.geo_valid = true;
  }
  return run;
}

}  // namespace

AttackReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<SyntheticUser> population = sample_population(spec.users, spec.population_seed, spec.model);
  for (SyntheticUser& u : population) u.jitter_m = spec.jitter_mm / 1000.0;

  bool want_geo =
      std::find(spec.attacks.begin(), spec.attacks.end(), "geolocation") != spec.attacks.end();

  // level -> user -> run
  std::vector<std::vector<UserRun>> runs;
  runs.reserve(spec.levels.size());
  for (PrivacyLevel level : spec.levels) {
    std::vector<UserRun> level_runs;
    level_runs.reserve(population.size());
    for (const SyntheticUser& user : population) {
      level_runs.push_back(run_user(spec, user, level, want_geo));
    }
    runs.push_back(std::move(level_runs));
  }

  AttackReport report;
  RandomSource boot_root(spec.bootstrap_seed);

  auto add_row = [&](const std::string& attack, const std::string& metric, PrivacyLevel level,
                     const Column& col, bool is_r2) {
    MetricRow row;
    row.attack = attack;
    row.metric = metric;
    row.level = level;
    RandomSource rng = boot_root.derive(hash_label(attack + "/" + metric + "/" + to_string(level)),
                                        "bootstrap");
    if (is_r2) {
      row.value = safe_r2(col.truth, col.estimate);
      if (col.truth.size() >= 2) {
        row.ci = bootstrap_ci(col.truth.size(), 1000, 0.99, rng,
                              [&col](std::span<const std::size_t> idx) {
                                std::vector<double> t;
                                std::vector<double> e;
                                t.reserve(idx.size());
                                e.reserve(idx.size());
                                for (std::size_t i : idx) {
                                  t.push_back(col.truth[i]);
                                  e.push_back(col.estimate[i]);
                                }
                                return safe_r2(t, e);
                              });
      } else {
        row.ci = {row.value, row.value};
      }
    } else {
      row.value = pct(col.correct);
      if (!col.correct.empty()) {
        row.ci = bootstrap_ci(col.correct.size(), 1000, 0.99, rng,
                              [&col](std::span<const std::size_t> idx) {
                                double s = 0;
                                for (std::size_t i : idx) s += col.correct[i];
                                return 100.0 * s / static_cast<double>(idx.size());
                              });
      } else {
        row.ci = {0, 0};
      }
    }
    report.rows.push_back(std::move(row));
  };

  for (const std::string& attack : spec.attacks) {
    for (std::size_t li = 0; li < spec.levels.size(); ++li) {
      PrivacyLevel level = spec.levels[li];
      const std::vector<UserRun>& level_runs = runs[li];

      // Scalar attribute attacks read session 0.
      auto scalar_columns = [&](auto truth_of, auto est_of, std::vector<double> thresholds,
                                bool with_r2) {
        std::vector<Column> cols(thresholds.size() + (with_r2 ? 1 : 0));
        for (std::size_t ui = 0; ui < population.size(); ++ui) {
          double truth = truth_of(population[ui]);
          std::optional<double> est = est_of(level_runs[ui].sessions[0]);
          for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
            cols[ti].correct.push_back(est && std::abs(*est - truth) <= thresholds[ti] ? 1.0 : 0.0);
          }
          if (with_r2 && est) {
            cols.back().truth.push_back(truth);
            cols.back().estimate.push_back(*est);
          }
        }
        return cols;
      };

      if (attack == "height") {
        auto cols = scalar_columns([](const SyntheticUser& u) { return u.truth.height; },
                                   [](const SessionEstimates& e) { return e.height; },
                                   {0.05, 0.07}, true);
        add_row(attack, "within_5cm_pct", level, cols[0], false);
        add_row(attack, "within_7cm_pct", level, cols[1], false);
        add_row(attack, "r2", level, cols[2], true);
      } else if (attack == "wingspan") {
        auto cols = scalar_columns([](const SyntheticUser& u) { return u.truth.wingspan(); },
                                   [](const SessionEstimates& e) { return e.wingspan; },
                                   {0.07, 0.12}, true);
        add_row(attack, "within_7cm_pct", level, cols[0], false);
        add_row(attack, "within_12cm_pct", level, cols[1], false);
        add_row(attack, "r2", level, cols[2], true);
      } else if (attack == "ipd") {
        auto cols = scalar_columns([](const SyntheticUser& u) { return u.truth.ipd; },
                                   [](const SessionEstimates& e) { return e.ipd; }, {0.5}, true);
        add_row(attack, "within_0.5mm_pct", level, cols[0], false);
        add_row(attack, "r2", level, cols[1], true);
      } else if (attack == "room") {
        auto cols = scalar_columns(
            [](const SyntheticUser& u) { return u.truth.room_w * u.truth.room_l; },
            [](const SessionEstimates& e) -> std::optional<double> {
              if (e.room_w && e.room_l) return *e.room_w * *e.room_l;
              return std::nullopt;
            },
            {2.0, 3.0}, true);
        add_row(attack, "area_within_2m2_pct", level, cols[0], false);
        add_row(attack, "area_within_3m2_pct", level, cols[1], false);
        add_row(attack, "r2", level, cols[2], true);
      } else if (attack == "depth") {
        auto cols = scalar_columns([](const SyntheticUser& u) { return u.truth.depth; },
                                   [](const SessionEstimates& e) { return e.depth; }, {0.05}, true);
        add_row(attack, "within_5cm_pct", level, cols[0], false);
        add_row(attack, "r2", level, cols[1], true);
      } else if (attack == "pitch") {
        auto cols = scalar_columns([](const SyntheticUser& u) { return u.truth.pitch; },
                                   [](const SessionEstimates& e) { return e.pitch; }, {10.0}, true);
        add_row(attack, "within_10hz_pct", level, cols[0], false);
        add_row(attack, "r2", level, cols[1], true);
      } else if (attack == "arm_ratio") {
        auto cols = scalar_columns([](const SyntheticUser& u) { return u.truth.arm_ratio(); },
                                   [](const SessionEstimates& e) { return e.arm_ratio; }, {}, true);
        add_row(attack, "r2", level, cols[0], true);
      } else if (attack == "longer_arm") {
        for (double thr : {0.01, 0.03}) {
          Column col;
          for (std::size_t ui = 0; ui < population.size(); ++ui) {
            const GroundTruth& t = population[ui].truth;
            if (std::abs(t.arm_r - t.arm_l) < thr) continue;
            LongerArm truth_side = t.arm_r > t.arm_l ? LongerArm::right : LongerArm::left;
            const auto& est = level_runs[ui].sessions[0].longer_arm;
            col.correct.push_back(est && *est == truth_side ? 1.0 : 0.0);
          }
          add_row(attack, thr == 0.01 ? "acc_ge_1cm_pct" : "acc_ge_3cm_pct", level, col, false);
        }
      } else if (attack == "handedness") {
        Column col;
        for (std::size_t ui = 0; ui < population.size(); ++ui) {
          const auto& est = level_runs[ui].sessions[0].right_handed;
          col.correct.push_back(est && *est == population[ui].truth.right_handed ? 1.0 : 0.0);
        }
        add_row(attack, "acc_pct", level, col, false);
      } else if (attack == "reaction") {
        Column col;
        for (std::size_t ui = 0; ui < population.size(); ++ui) {
          const auto& est = level_runs[ui].sessions[0].reaction;
          bool ok = est && std::floor(*est / 50.0) == std::floor(population[ui].reaction_ms / 50.0);
          col.correct.push_back(ok ? 1.0 : 0.0);
        }
        add_row(attack, "bucket50ms_acc_pct", level, col, false);
      } else if (attack == "refresh_rate") {
        Column col;
        for (std::size_t ui = 0; ui < population.size(); ++ui) {
          const auto& est = level_runs[ui].sessions[0].refresh_rate;
          bool ok = est && std::abs(*est - population[ui].device_rate_hz) <= 3.0;
          col.correct.push_back(ok ? 1.0 : 0.0);
        }
        add_row(attack, "within_3hz_pct", level, col, false);
      } else if (attack == "geolocation") {
        Column col400;
        Column col500;
        for (const UserRun& run : level_runs) {
          col400.correct.push_back(run.geo_valid && run.geo_error_km <= 400 ? 1.0 : 0.0);
          col500.correct.push_back(run.geo_valid && run.geo_error_km <= 500 ? 1.0 : 0.0);
        }
        add_row(attack, "within_400km_pct", level, col400, false);
        add_row(attack, "within_500km_pct", level, col500, false);
      } else if (attack == "identity") {
        std::vector<PopulationEntry> entries;
        entries.reserve(population.size());
        for (std::size_t ui = 0; ui < population.size(); ++ui) {
          entries.push_back(PopulationEntry{population[ui].id, level_runs[ui].sessions[0].features});
        }
        Column col;
        for (std::size_t ui = 0; ui < population.size(); ++ui) {
          int found = -1;
          try {
            found = identify(entries, level_runs[ui].sessions[1].features);
          } catch (const ValidationError&) {
          }
          col.correct.push_back(found == population[ui].id ? 1.0 : 0.0);
        }
        add_row(attack, "acc_pct", level, col, false);
      }
    }
  }

  if (!spec.out_csv.empty()) {
    std::ofstream out(spec.out_csv);
    if (!out) throw StreamError("cannot write report: " + spec.out_csv);
    out << report.to_csv();
    if (!out) throw StreamError("write failed: " + spec.out_csv);
  }
  if (!spec.out_json.empty()) {
    std::ofstream out(spec.out_json);
    if (!out) throw StreamError("cannot write report: " + spec.out_json);
    out << report.to_json_string() << '\n';
    if (!out) throw StreamError("write failed: " + spec.out_json);
  }
  return report;
}

std::string AttackReport::to_csv() const {
  std::string out = "attack,level,metric,value,ci_lo,ci_hi\n";
  for (const MetricRow& r : rows) {
    out += r.attack;
    out += ',';
    out += to_string(r.level);
    out += ',';
    out += r.metric;
    out += ',';
    out += fmt_value(r.value);
    out += ',';
    out += fmt_value(r.ci.lo);
    out += ',';
    out += fmt_value(r.ci.hi);
    out += '\n';
  }
  return out;
}

std::string AttackReport::to_json_string() const {
  json arr = json::array();
  for (const MetricRow& r : rows) {
    arr.push_back(json{{"attack", r.attack},
                       {"level", to_string(r.level)},
                       {"metric", r.metric},
                       {"value", r.value},
                       {"ci_lo", r.ci.lo},
                       {"ci_hi", r.ci.hi}});
  }
  return arr.dump(2);
}

std::optional<double> AttackReport::value(const std::string& attack, const std::string& metric,
                                          PrivacyLevel level) const {
  for (const MetricRow& r : rows) {
    if (r.attack == attack && r.metric == metric && r.level == level) return r.value;
  }
  return std::nullopt;
}

namespace {

double truth_attribute(Feature f, const SyntheticUser& u) {
  switch (f) {
    case Feature::height: return u.truth.height;
    case Feature::wingspan: return u.truth.wingspan();
    case Feature::ipd: return u.truth.ipd;
    case Feature::depth: return u.truth.depth;
    case Feature::pitch: return u.truth.pitch;
    case Feature::room: return u.truth.room_w;
    default: break;
  }
  throw ValidationError("epsilon_sweep: unsupported attribute " + to_string(f));
}

std::optional<double> estimated_attribute(Feature f, const SessionEstimates& e) {
  switch (f) {
    case Feature::height: return e.height;
    case Feature::wingspan: return e.wingspan;
    case Feature::ipd: return e.ipd;
    case Feature::depth: return e.depth;
    case Feature::pitch: return e.pitch;
    case Feature::room: return e.room_w;
    default: break;
  }
  return std::nullopt;
}

}  // namespace

std::vector<SweepPoint> epsilon_sweep(Feature attribute, const std::vector<double>& epsilons,
                                      const ExperimentSpec& spec) {
  if (epsilons.size() < 3) {
    throw ValidationError("epsilon_sweep: need at least 3 epsilon values");
  }
  for (double e : epsilons) {
    if (!(e > 0)) throw ValidationError("epsilon_sweep: epsilons must be positive");
  }
  std::vector<SyntheticUser> population = sample_population(spec.users, spec.population_seed, spec.model);
  for (SyntheticUser& u : population) u.jitter_m = spec.jitter_mm / 1000.0;

  std::vector<SweepPoint> curve;
  curve.reserve(epsilons.size());
  for (double eps : epsilons) {
    std::vector<double> truth;
    std::vector<double> est;
    truth.reserve(population.size());
    est.reserve(population.size());
    for (const SyntheticUser& user : population) {
      auto raw = generate_session(user, spec.duration_s, rate_for(spec, user),
                                  session_seed_for(spec, user.id, 0));
      DefenseConfig cfg;
      cfg.level = PrivacyLevel::high;
      cfg.enabled = {attribute};
      cfg.epsilon_overrides[attribute] = eps;
      cfg.master_seed = defense_seed_for(spec, user.id);
      Session session = Session::begin(cfg, user.truth, 0);
      auto defended = defend_stream(raw, session);
      auto estimates = harvest_session(defended);
      if (auto v = estimated_attribute(attribute, estimates)) {
        truth.push_back(truth_attribute(attribute, user));
        est.push_back(*v);
      }
    }
    curve.push_back(SweepPoint{eps, safe_r2(truth, est)});
  }
  return curve;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& curve) {
  std::string out = "epsilon,r2\n";
  for (const SweepPoint& p : curve) {
    out += fmt_value(p.epsilon);
    out += ',';
    out += fmt_value(p.r2);
    out += '\n';
  }
  return out;
}

GroundTruth estimate_truth_from_stream(std::span<const TelemetryFrame> stream) {
  GroundTruth t;
  auto mid = [](Feature f) {
    const AttributePreset& p = preset_for(f);
    return (p.lower + p.upper) / 2.0;
  };
  try {
    t.height = estimate_height(stream);
  } catch (const ValidationError&) {
    t.height = mid(Feature::height);
  }
  if (!(t.height > 0)) t.height = mid(Feature::height);

  auto [reach_r, reach_l] = stream.empty() ? std::pair<double, double>{0, 0}
                                           : estimate_arm_extents(stream);
  if (reach_r > 0.3 && reach_l > 0.3) {
    t.arm_r = reach_r;
    t.arm_l = reach_l;
  } else {
    t.arm_r = t.arm_l = mid(Feature::wingspan) / 2.0;
  }
  try {
    t.ipd = estimate_ipd(stream);
  } catch (const ValidationError&) {
    t.ipd = mid(Feature::ipd);
  }
  try {
    t.pitch = estimate_pitch(stream);
  } catch (const ValidationError&) {
    t.pitch = mid(Feature::pitch);
  }
  try {
    double d = estimate_depth(stream, t.height);
    t.depth = d >= 0.05 ? d : preset_for(Feature::depth).upper;
  } catch (const ValidationError&) {
    t.depth = preset_for(Feature::depth).upper;
  }
  try {
    auto [w, l] = estimate_room(stream);
    t.room_w = w >= 0.5 ? w : mid(Feature::room);
    t.room_l = l >= 0.5 ? l : mid(Feature::room);
  } catch (const ValidationError&) {
    t.room_w = t.room_l = mid(Feature::room);
  }
  try {
    t.right_handed = estimate_handedness(stream);
  } catch (const ValidationError&) {
    t.right_handed = true;
  }
  return t;
}

std::string session_report_json(const SessionReport& report) {
  json eps = json::object();
  for (const auto& [name, value] : report.epsilons) eps[name] = value;
  json j{{"level", to_string(report.level)},
         {"enabled", report.enabled_features},
         {"epsilons", eps},
         {"budget", report.budget},
         {"frames", report.frames_processed}};
  return j.dump();
}

ReplaySummary replay_file(const std::filesystem::path& input,
                          const std::filesystem::path& config_path,
                          const std::filesystem::path& output, const ReplayOverrides& overrides) {
  std::vector<TelemetryFrame> frames = read_telemetry_file(input);
  SessionConfigFile cfg_file = load_session_config(config_path);
  DefenseConfig cfg = cfg_file.defense;
  if (overrides.level) cfg.level = *overrides.level;
  if (overrides.features) {
    cfg.enabled.clear();
    cfg.enabled.insert(overrides.features->begin(), overrides.features->end());
  }
  if (overrides.seed) cfg.master_seed = *overrides.seed;

  GroundTruth truth = cfg_file.truth ? *cfg_file.truth : estimate_truth_from_stream(frames);

  Session session = Session::begin(cfg, truth, 0);
  std::vector<TelemetryFrame> defended = defend_stream(frames, session);

  ReplaySummary summary;
  summary.report = session.report();
  summary.offsets = session.offsets();
  summary.frames_written = defended.size();
  write_telemetry_file(output, defended, "session_report " + session_report_json(summary.report));
  return summary;
}

}  // namespace vrcloak
