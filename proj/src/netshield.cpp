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

#include "vrcloak/netshield.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "vrcloak/errors.hpp"

namespace vrcloak {

std::int64_t to_micro_ms(double t_ms) { return std::llround(t_ms * 1000.0); }

std::vector<TimedPacket> packets_from_frames(const std::vector<TelemetryFrame>& frames) {
  std::vector<TimedPacket> packets;
  packets.reserve(frames.size());
  for (const TelemetryFrame& f : frames) {
    if (!f.rtt_ms) {
      throw ValidationError("frame missing rtt sidecar channel at t=" + std::to_string(f.t_ms));
    }
    packets.push_back(TimedPacket{f, f.t_ms, *f.rtt_ms});
  }
  return packets;
}

std::vector<TimedPacket> clamp_latency(std::vector<TimedPacket> packets, double clamp_ms) {
  if (!(clamp_ms > 0)) {
    throw ValidationError("invalid params: latency clamp must be > 0");
  }
  for (TimedPacket& p : packets) {
    p.rtt_ms = std::max(p.rtt_ms, clamp_ms);
    p.frame.rtt_ms = p.rtt_ms;
  }
  return packets;
}

ReactionClampResult clamp_reaction(const std::vector<TelemetryFrame>& frames, double pad_ms) {
  if (pad_ms < 0) {
    throw ValidationError("invalid params: reaction pad must be >= 0");
  }
  ReactionClampResult result;
  if (pad_ms == 0) {
    result.frames = frames;
    return result;
  }

  std::int64_t pad_us = to_micro_ms(pad_ms);
  std::deque<std::pair<std::int64_t, Event>> scheduled;  // (due time us, event)
  int outstanding_stimuli = 0;

  result.frames.reserve(frames.size());
  for (const TelemetryFrame& f : frames) {
    TelemetryFrame out = f;
    std::int64_t t_us = to_micro_ms(f.t_ms);

    std::vector<Event> kept;
    kept.reserve(out.events.size());
    // Deliver padded responses that have come due before this frame's own events.
    std::vector<Event> due;
    while (!scheduled.empty() && scheduled.front().first <= t_us) {
      due.push_back(scheduled.front().second);
      scheduled.pop_front();
    }
    for (const Event& e : out.events) {
      if (e.kind == EventKind::stimulus) {
        ++outstanding_stimuli;
        kept.push_back(e);
      } else if (e.kind == EventKind::response) {
        if (outstanding_stimuli == 0) {
          ++result.unmatched_responses;
          kept.push_back(e);  // passthrough
        } else {
          --outstanding_stimuli;
          scheduled.emplace_back(t_us + pad_us, e);
        }
      } else {
        kept.push_back(e);
      }
    }
    out.events.clear();
    out.events.insert(out.events.end(), due.begin(), due.end());
    out.events.insert(out.events.end(), kept.begin(), kept.end());
    result.frames.push_back(std::move(out));
  }
  // Stream ended before some padded responses came due; attach to the tail.
  if (!scheduled.empty() && !result.frames.empty()) {
    for (const auto& [due_us, e] : scheduled) {
      (void)due_us;
      result.frames.back().events.push_back(e);
    }
  }
  return result;
}

RateClampResult clamp_rate(const std::vector<TelemetryFrame>& frames, double rate_hz) {
  if (!(rate_hz > 0)) {
    throw ValidationError("invalid params: rate clamp must be > 0");
  }
  RateClampResult result;
  if (frames.size() < 2) {
    result.frames = frames;
    return result;
  }

  std::int64_t step_us = std::llround(1e6 / rate_hz);

  std::vector<std::int64_t> deltas;
  deltas.reserve(frames.size() - 1);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    deltas.push_back(to_micro_ms(frames[i].t_ms) - to_micro_ms(frames[i - 1].t_ms));
  }
  std::nth_element(deltas.begin(), deltas.begin() + deltas.size() / 2, deltas.end());
  std::int64_t median_dt = deltas[deltas.size() / 2];

  // Inputs not faster than the clamp pass through: frames cannot be
  // fabricated to raise a rate.
  if (median_dt >= step_us - 2) {
    result.frames = frames;
    if (median_dt > step_us + 2) {
      result.warning = "input rate below clamp; stream passed through unchanged";
    }
    return result;
  }

  result.modified = true;
  std::int64_t t0_us = to_micro_ms(frames.front().t_ms);
  std::int64_t last_us = to_micro_ms(frames.back().t_ms);

  std::size_t next = 0;  // next unconsumed input
  std::vector<Event> pending_events;
  for (std::int64_t k = 0;; ++k) {
    std::int64_t slot_us = t0_us + k * step_us;
    if (slot_us > last_us) break;
    std::size_t consumed = 0;
    const TelemetryFrame* held = nullptr;
    while (next < frames.size() && to_micro_ms(frames[next].t_ms) <= slot_us) {
      held = &frames[next];
      pending_events.insert(pending_events.end(), frames[next].events.begin(),
                            frames[next].events.end());
      ++next;
      ++consumed;
    }
    if (held == nullptr) continue;  // no new frame this slot
    (void)consumed;
    TelemetryFrame out = *held;
    out.t_ms = static_cast<double>(slot_us) / 1000.0;
    out.events = std::move(pending_events);
    pending_events.clear();
    result.frames.push_back(std::move(out));
  }
  return result;
}

}  // namespace vrcloak
