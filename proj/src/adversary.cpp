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

#include "vrcloak/adversary.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "vrcloak/errors.hpp"
#include "vrcloak/stats.hpp"

namespace vrcloak {

namespace {

void require_frames(std::span<const TelemetryFrame> stream, const char* who) {
  if (stream.empty()) throw ValidationError(std::string(who) + ": empty stream");
}

double xz_distance(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  double dx = a.x() - b.x();
  double dz = a.z() - b.z();
  return std::sqrt(dx * dx + dz * dz);
}

}  // namespace

double estimate_height(std::span<const TelemetryFrame> stream, HeightMethod method) {
  require_frames(stream, "estimate_height");
  std::vector<double> ys;
  ys.reserve(stream.size());
  for (const TelemetryFrame& f : stream) ys.push_back(f.head.y());
  if (method == HeightMethod::max) return *std::max_element(ys.begin(), ys.end());
  return percentile(std::move(ys), 0.99);
}

double estimate_wingspan(std::span<const TelemetryFrame> stream) {
  require_frames(stream, "estimate_wingspan");
  double best = 0;
  for (const TelemetryFrame& f : stream) {
    best = std::max(best, xz_distance(f.right, f.left));
  }
  return best;
}

std::pair<double, double> estimate_room(std::span<const TelemetryFrame> stream) {
  require_frames(stream, "estimate_room");
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x;
  double min_z = min_x;
  double max_z = -min_x;
  for (const TelemetryFrame& f : stream) {
    min_x = std::min(min_x, f.head.x());
    max_x = std::max(max_x, f.head.x());
    min_z = std::min(min_z, f.head.z());
    max_z = std::max(max_z, f.head.z());
  }
  return {max_x - min_x, max_z - min_z};
}

double estimate_depth(std::span<const TelemetryFrame> stream, double height_est) {
  require_frames(stream, "estimate_depth");
  double min_y = std::numeric_limits<double>::infinity();
  for (const TelemetryFrame& f : stream) min_y = std::min(min_y, f.head.y());
  return height_est - min_y;
}

double estimate_ipd(std::span<const TelemetryFrame> stream) {
  std::vector<double> gaps;
  for (const TelemetryFrame& f : stream) {
    if (f.eyes) gaps.push_back(f.eyes->gap_m() * 1000.0);
  }
  if (gaps.empty()) throw ValidationError("estimate_ipd: stream carries no eye positions");
  return median(std::move(gaps));
}

double estimate_pitch(std::span<const TelemetryFrame> stream) {
  std::vector<double> pitches;
  for (const TelemetryFrame& f : stream) {
    if (f.pitch_hz) pitches.push_back(*f.pitch_hz);
  }
  if (pitches.empty()) throw ValidationError("estimate_pitch: stream carries no pitch channel");
  return median(std::move(pitches));
}

bool estimate_handedness(std::span<const TelemetryFrame> stream) {
  long right = 0;
  long left = 0;
  for (const TelemetryFrame& f : stream) {
    for (const Event& e : f.events) {
      if (e.kind != EventKind::interaction) continue;
      if (e.hand == Hand::right) ++right;
      if (e.hand == Hand::left) ++left;
    }
  }
  if (right + left == 0) {
    throw ValidationError("estimate_handedness: no interaction events observed");
  }
  return right >= left;
}

std::pair<double, double> estimate_arm_extents(std::span<const TelemetryFrame> stream) {
  require_frames(stream, "estimate_arm_extents");
  double reach_r = 0;
  double reach_l = 0;
  for (const TelemetryFrame& f : stream) {
    reach_r = std::max(reach_r, xz_distance(f.right, f.head));
    reach_l = std::max(reach_l, xz_distance(f.left, f.head));
  }
  return {reach_r, reach_l};
}

LongerArm estimate_longer_arm(std::span<const TelemetryFrame> stream) {
  auto [reach_r, reach_l] = estimate_arm_extents(stream);
  if (std::abs(reach_r - reach_l) <= 1e-3) return LongerArm::tie;
  return reach_r > reach_l ? LongerArm::right : LongerArm::left;
}

double estimate_refresh_rate(std::span<const TelemetryFrame> stream) {
  if (stream.size() < 2) {
    throw ValidationError("estimate_refresh_rate: need at least 2 frames");
  }
  std::vector<double> deltas;
  deltas.reserve(stream.size() - 1);
  for (std::size_t i = 1; i < stream.size(); ++i) {
    deltas.push_back(stream[i].t_ms - stream[i - 1].t_ms);
  }
  return 1000.0 / median(std::move(deltas));
}

double estimate_reaction(std::span<const TelemetryFrame> stream) {
  std::vector<double> pending;  // stimulus times awaiting a response
  std::vector<double> reactions;
  for (const TelemetryFrame& f : stream) {
    for (const Event& e : f.events) {
      if (e.kind == EventKind::stimulus) {
        pending.push_back(f.t_ms);
      } else if (e.kind == EventKind::response && !pending.empty()) {
        reactions.push_back(f.t_ms - pending.front());
        pending.erase(pending.begin());
      }
    }
  }
  if (reactions.empty()) {
    throw ValidationError("estimate_reaction: no stimulus/response pairs observed");
  }
  return mean(reactions);
}

GeoEstimate geolocate(std::span<const GeoAnchor> anchors, double propagation_km_per_ms,
                      bool one_way) {
  if (anchors.size() < 3) {
    throw ValidationError("geolocate: need at least 3 anchors");
  }
  // Collinear anchors leave the position under-determined.
  Eigen::MatrixXd centered(2, static_cast<Eigen::Index>(anchors.size()));
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const GeoAnchor& a : anchors) centroid += a.position_km;
  centroid /= static_cast<double>(anchors.size());
  for (Eigen::Index i = 0; i < centered.cols(); ++i) {
    centered.col(i) = anchors[static_cast<std::size_t>(i)].position_km - centroid;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  if (svd.singularValues()(1) < 1e-9 * std::max(1.0, svd.singularValues()(0))) {
    throw ValidationError("geolocate: degenerate geometry (collinear anchors)");
  }

  double range_factor = one_way ? 1.0 : 2.0;
  auto objective = [&](const Eigen::Vector2d& p) {
    double sse = 0;
    for (const GeoAnchor& a : anchors) {
      double predicted = (p - a.position_km).norm() * range_factor / propagation_km_per_ms;
      double r = predicted - a.rtt_ms;
      sse += r * r;
    }
    return sse;
  };

  // Search box: anchor bounding box padded by the largest implied range.
  double min_x = anchors[0].position_km.x();
  double max_x = min_x;
  double min_z = anchors[0].position_km.y();
  double max_z = min_z;
  double max_range = 0;
  for (const GeoAnchor& a : anchors) {
    min_x = std::min(min_x, a.position_km.x());
    max_x = std::max(max_x, a.position_km.x());
    min_z = std::min(min_z, a.position_km.y());
    max_z = std::max(max_z, a.position_km.y());
    max_range = std::max(max_range, a.rtt_ms * propagation_km_per_ms / range_factor);
  }
  double pad = std::max(max_range, 10.0);
  min_x -= pad;
  max_x += pad;
  min_z -= pad;
  max_z += pad;

  constexpr int kGrid = 64;
  Eigen::Vector2d best(min_x, min_z);
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    for (int j = 0; j <= kGrid; ++j) {
      Eigen::Vector2d p(min_x + (max_x - min_x) * i / kGrid, min_z + (max_z - min_z) * j / kGrid);
      double f = objective(p);
      if (f < best_f) {
        best_f = f;
        best = p;
      }
    }
  }

  // Local pattern refinement: probe the 8-neighborhood, halving the step on
  // stagnation until well below 1 km.
  double step = std::max(max_x - min_x, max_z - min_z) / kGrid;
  while (step > 1e-4) {
    bool moved = false;
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dz = -1; dz <= 1; ++dz) {
        if (dx == 0 && dz == 0) continue;
        Eigen::Vector2d p = best + Eigen::Vector2d(dx * step, dz * step);
        double f = objective(p);
        if (f < best_f) {
          best_f = f;
          best = p;
          moved = true;
        }
      }
    }
    if (!moved) step /= 2;
  }

  GeoEstimate est;
  est.position_km = best;
  est.rms_residual_ms = std::sqrt(best_f / static_cast<double>(anchors.size()));

  // Uninformative RTTs: all equal (clamped) or an objective that barely moves
  // over a probe ring around the optimum.
  std::vector<double> rtts;
  rtts.reserve(anchors.size());
  for (const GeoAnchor& a : anchors) rtts.push_back(a.rtt_ms);
  bool all_equal = stddev(rtts) < 1e-9;
  double probe = std::max(0.05 * pad, 1.0);
  double worst_nearby = best_f;
  for (int dir = 0; dir < 8; ++dir) {
    double ang = dir * std::acos(-1.0) / 4.0;
    Eigen::Vector2d p = best + probe * Eigen::Vector2d(std::cos(ang), std::sin(ang));
    worst_nearby = std::max(worst_nearby, objective(p));
  }
  bool flat = worst_nearby <= best_f * 1.001 + 1e-12;
  est.low_confidence = all_equal || flat;
  return est;
}

const std::array<const char*, kFeatureCount> kFeatureNames = {
    "height", "wingspan", "arm_ratio", "ipd",      "room_w",
    "room_l", "depth",    "pitch",     "reaction", "refresh_rate"};

FeatureVector harvest_features(std::span<const TelemetryFrame> stream) {
  FeatureVector fv;
  auto set = [&fv](int i, double v) {
    fv.values(i) = v;
    fv.present[static_cast<std::size_t>(i)] = true;
  };
  auto attempt = [](auto&& fn) {
    try {
      fn();
    } catch (const ValidationError&) {
    }
  };
  attempt([&] {
    double h = estimate_height(stream);
    set(0, h);
    set(6, estimate_depth(stream, h));
  });
  attempt([&] { set(1, estimate_wingspan(stream)); });
  attempt([&] {
    auto [r, l] = estimate_arm_extents(stream);
    if (r + l > 0) set(2, r / (r + l));
  });
  attempt([&] { set(3, estimate_ipd(stream)); });
  attempt([&] {
    auto [w, l] = estimate_room(stream);
    set(4, w);
    set(5, l);
  });
  attempt([&] { set(7, estimate_pitch(stream)); });
  attempt([&] { set(8, estimate_reaction(stream)); });
  attempt([&] { set(9, estimate_refresh_rate(stream)); });
  return fv;
}

int identify(std::span<const PopulationEntry> population, const FeatureVector& probe) {
  if (population.empty()) throw ValidationError("identify: empty population");

  // Per-attribute z-normalization over the population's present values.
  std::array<double, kFeatureCount> mu{};
  std::array<double, kFeatureCount> sigma{};
  std::array<bool, kFeatureCount> usable{};
  for (int k = 0; k < kFeatureCount; ++k) {
    std::vector<double> vals;
    for (const PopulationEntry& e : population) {
      if (e.features.present[static_cast<std::size_t>(k)]) vals.push_back(e.features.values(k));
    }
    if (vals.size() < 2) continue;
    double m = mean(vals);
    double s = stddev(vals);
    if (s < 1e-12) continue;  // constant feature carries no signal
    mu[static_cast<std::size_t>(k)] = m;
    sigma[static_cast<std::size_t>(k)] = s;
    usable[static_cast<std::size_t>(k)] = true;
  }

  double best_dist = std::numeric_limits<double>::infinity();
  int best_id = 0;
  bool any_overlap = false;
  for (const PopulationEntry& e : population) {
    double dist = 0;
    int shared = 0;
    for (int k = 0; k < kFeatureCount; ++k) {
      std::size_t ks = static_cast<std::size_t>(k);
      if (!usable[ks] || !probe.present[ks] || !e.features.present[ks]) continue;
      double pz = (probe.values(k) - mu[ks]) / sigma[ks];
      double ez = (e.features.values(k) - mu[ks]) / sigma[ks];
      dist += (pz - ez) * (pz - ez);
      ++shared;
    }
    if (shared == 0) continue;
    any_overlap = true;
    if (dist < best_dist || (dist == best_dist && e.user_id < best_id)) {
      best_dist = dist;
      best_id = e.user_id;
    }
  }
  if (!any_overlap) {
    throw ValidationError("identify: probe shares no features with the population");
  }
  return best_id;
}

}  // namespace vrcloak
