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
// Telemetry frame type and the canonical line-delimited recording format.
//
// One frame per line, fixed field order, SI units (m, ms, mm, Hz):
//
//   t hx hy hz rx ry rz lx ly lz [eyes elx ely elz erx ery erz]
//     [pitch hz] [event kind hand]... [rtt ms]
//
// Floats are serialized with 17 significant digits so frames round-trip
// bit-exactly. Lines beginning with '#' are comments.

#ifndef VRCLOAK_TELEMETRY_HPP_
#define VRCLOAK_TELEMETRY_HPP_

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace vrcloak {

enum class EventKind { stimulus, response, interaction };
enum class Hand { left, right, none };

struct Event {
  EventKind kind = EventKind::interaction;
  Hand hand = Hand::none;

  bool operator==(const Event&) const = default;
};

struct EyePair {
  Eigen::Vector3d left = Eigen::Vector3d::Zero();
  Eigen::Vector3d right = Eigen::Vector3d::Zero();

  double gap_m() const { return (right - left).norm(); }
};

// One timestamped sample of headset and controller positions, with optional
// eye positions, voice-pitch channel, event markers, and a simulated-RTT
// sidecar channel. Coordinates are left-handed Y-up, meters.
struct TelemetryFrame {
  double t_ms = 0;
  Eigen::Vector3d head = Eigen::Vector3d::Zero();
  Eigen::Vector3d right = Eigen::Vector3d::Zero();
  Eigen::Vector3d left = Eigen::Vector3d::Zero();
  std::optional<EyePair> eyes;
  std::optional<double> pitch_hz;
  std::vector<Event> events;
  std::optional<double> rtt_ms;
};

bool operator==(const TelemetryFrame& a, const TelemetryFrame& b);

std::string to_string(EventKind kind);
std::string to_string(Hand hand);
EventKind event_kind_from_string(const std::string& s);
Hand hand_from_string(const std::string& s);

// Serializes one frame as a single line (no trailing newline).
std::string format_frame(const TelemetryFrame& frame);

// Parses one line. Throws StreamError on malformed input.
TelemetryFrame parse_frame(const std::string& line);

// Whole-stream I/O. Readers validate finiteness and strictly increasing
// timestamps; errors carry the offending line number and file context.
std::vector<TelemetryFrame> read_telemetry(std::istream& in, const std::string& context = "<stream>");
std::vector<TelemetryFrame> read_telemetry_file(const std::filesystem::path& path);
void write_telemetry(std::ostream& out, const std::vector<TelemetryFrame>& frames);
void write_telemetry_file(const std::filesystem::path& path, const std::vector<TelemetryFrame>& frames,
                          const std::string& trailer = "");

}  // namespace vrcloak

#endif  // VRCLOAK_TELEMETRY_HPP_
