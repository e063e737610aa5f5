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
// Network-attribute clamping over timestamped frame streams. Latency and
// rate are one-way bounded (delay can be added, never removed), so these
// defenses clamp rather than add DP noise, anonymizing users within a
// cluster. Timestamps are carried at 0.001 ms resolution internally so the
// emission grid cannot drift.

#ifndef VRCLOAK_NETSHIELD_HPP_
#define VRCLOAK_NETSHIELD_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "vrcloak/telemetry.hpp"

namespace vrcloak {

// One broadcast packet: a telemetry frame plus its simulated intrinsic
// round-trip time (sidecar input).
struct TimedPacket {
  TelemetryFrame frame;
  double send_ms = 0;
  double rtt_ms = 0;
};

// Builds packets from a recording, taking intrinsic RTTs from the frames'
// sidecar channel. Throws ValidationError when the channel is absent.
std::vector<TimedPacket> packets_from_frames(const std::vector<TelemetryFrame>& frames);

// Latency equalization: each packet's effective RTT becomes
// max(intrinsic, clamp). RTT can never drop below intrinsic; packets whose
// intrinsic RTT is at or below the clamp all show exactly the clamp value.
// Ordering is preserved.
std::vector<TimedPacket> clamp_latency(std::vector<TimedPacket> packets, double clamp_ms);

struct ReactionClampResult {
  std::vector<TelemetryFrame> frames;
  int unmatched_responses = 0;  // responses without a preceding stimulus (passed through)
};

// Delays response events by `pad_ms` of broadcast padding: each response is
// detached and re-attached to the first frame at or after its original time
// plus the pad (the final frame if the stream ends first). Stimuli are
// untouched, so the observed reaction time = true reaction + pad.
ReactionClampResult clamp_reaction(const std::vector<TelemetryFrame>& frames, double pad_ms);

struct RateClampResult {
  std::vector<TelemetryFrame> frames;
  bool modified = false;
  std::string warning;  // set when the input rate is at or below the clamp
};

// Broadcast-rate clamping by sample-and-hold decimation: output frames sit on
// a fixed 1000/rate ms grid, each slot carrying the most recent input frame.
// Events from dropped frames migrate to the next emitted frame (event packets
// are not discarded). Inputs at or below the clamp rate pass through
// unchanged -- frames are never fabricated.
RateClampResult clamp_rate(const std::vector<TelemetryFrame>& frames, double rate_hz);

// 0.001 ms resolution helpers shared with the estimators.
std::int64_t to_micro_ms(double t_ms);

}  // namespace vrcloak

#endif  // VRCLOAK_NETSHIELD_HPP_
