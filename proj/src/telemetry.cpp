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

#include "vrcloak/telemetry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw StreamError("not a number: '" + tok + "'");
  }
  if (pos != tok.size()) throw StreamError("not a number: '" + tok + "'");
  return v;
}

bool frame_finite(const TelemetryFrame& f) {
  auto ok3 = [](const Eigen::Vector3d& v) { return v.allFinite(); };
  if (!std::isfinite(f.t_ms) || !ok3(f.head) || !ok3(f.right) || !ok3(f.left)) return false;
  if (f.eyes && (!ok3(f.eyes->left) || !ok3(f.eyes->right))) return false;
  if (f.pitch_hz && !std::isfinite(*f.pitch_hz)) return false;
  if (f.rtt_ms && !std::isfinite(*f.rtt_ms)) return false;
  return true;
}

}  // namespace

bool operator==(const TelemetryFrame& a, const TelemetryFrame& b) {
  auto eq3 = [](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    return x.x() == y.x() && x.y() == y.y() && x.z() == y.z();
  };
  if (a.t_ms != b.t_ms || !eq3(a.head, b.head) || !eq3(a.right, b.right) || !eq3(a.left, b.left)) {
    return false;
  }
  if (a.eyes.has_value() != b.eyes.has_value()) return false;
  if (a.eyes && (!eq3(a.eyes->left, b.eyes->left) || !eq3(a.eyes->right, b.eyes->right))) return false;
  if (a.pitch_hz != b.pitch_hz || a.rtt_ms != b.rtt_ms) return false;
  return a.events == b.events;
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::stimulus: return "stimulus";
    case EventKind::response: return "response";
    case EventKind::interaction: return "interaction";
  }
  return "interaction";
}

std::string to_string(Hand hand) {
  switch (hand) {
    case Hand::left: return "left";
    case Hand::right: return "right";
    case Hand::none: return "none";
  }
  return "none";
}

EventKind event_kind_from_string(const std::string& s) {
  if (s == "stimulus") return EventKind::stimulus;
  if (s == "response") return EventKind::response;
  if (s == "interaction") return EventKind::interaction;
  throw StreamError("unknown event kind '" + s + "'");
}

Hand hand_from_string(const std::string& s) {
  if (s == "left") return Hand::left;
  if (s == "right") return Hand::right;
  if (s == "none") return Hand::none;
  throw StreamError("unknown hand '" + s + "'");
}

std::string format_frame(const TelemetryFrame& f) {
  std::string out = fmt_double(f.t_ms);
  auto put3 = [&out](const Eigen::Vector3d& v) {
    out += ' ';
    out += fmt_double(v.x());
    out += ' ';
    out += fmt_double(v.y());
    out += ' ';
    out += fmt_double(v.z());
  };
  put3(f.head);
  put3(f.right);
  put3(f.left);
  if (f.eyes) {
    out += " eyes";
    put3(f.eyes->left);
    put3(f.eyes->right);
  }
  if (f.pitch_hz) {
    out += " pitch ";
    out += fmt_double(*f.pitch_hz);
  }
  for (const Event& e : f.events) {
    out += " event ";
    out += to_string(e.kind);
    out += ' ';
    out += to_string(e.hand);
  }
  if (f.rtt_ms) {
    out += " rtt ";
    out += fmt_double(*f.rtt_ms);
  }
  return out;
}

TelemetryFrame parse_frame(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tok;
  std::string t;
  while (ss >> t) tok.push_back(t);
  if (tok.size() < 10) throw StreamError("expected at least 10 fields");

  TelemetryFrame f;
  f.t_ms = parse_double(tok[0]);
  auto get3 = [&tok](std::size_t i) {
    return Eigen::Vector3d(parse_double(tok[i]), parse_double(tok[i + 1]), parse_double(tok[i + 2]));
  };
  f.head = get3(1);
  f.right = get3(4);
  f.left = get3(7);

  std::size_t i = 10;
  if (i < tok.size() && tok[i] == "eyes") {
    if (i + 6 >= tok.size()) throw StreamError("eyes group needs 6 fields");
    f.eyes = EyePair{get3(i + 1), get3(i + 4)};
    i += 7;
  }
  if (i < tok.size() && tok[i] == "pitch") {
    if (i + 1 >= tok.size()) throw StreamError("pitch group needs 1 field");
    f.pitch_hz = parse_double(tok[i + 1]);
    i += 2;
  }
  while (i < tok.size() && tok[i] == "event") {
    if (i + 2 >= tok.size()) throw StreamError("event group needs 2 fields");
    f.events.push_back(Event{event_kind_from_string(tok[i + 1]), hand_from_string(tok[i + 2])});
    i += 3;
  }
  if (i < tok.size() && tok[i] == "rtt") {
    if (i + 1 >= tok.size()) throw StreamError("rtt group needs 1 field");
    f.rtt_ms = parse_double(tok[i + 1]);
    i += 2;
  }
  if (i != tok.size()) throw StreamError("unexpected field '" + tok[i] + "'");
  if (!frame_finite(f)) throw StreamError("non-finite coordinate");
  if (f.t_ms < 0) throw StreamError("negative timestamp");
  return f;
}

std::vector<TelemetryFrame> read_telemetry(std::istream& in, const std::string& context) {
  std::vector<TelemetryFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  double prev_t = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    TelemetryFrame f;
    try {
      f = parse_frame(line);
    } catch (const StreamError& e) {
      throw StreamError(context + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (f.t_ms <= prev_t) {
      throw StreamError(context + ":" + std::to_string(line_no) +
                        ": timestamps must be strictly increasing");
    }
    prev_t = f.t_ms;
    frames.push_back(std::move(f));
  }
  return frames;
}

std::vector<TelemetryFrame> read_telemetry_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StreamError("cannot open telemetry file: " + path.string());
  return read_telemetry(in, path.string());
}

void write_telemetry(std::ostream& out, const std::vector<TelemetryFrame>& frames) {
  for (const TelemetryFrame& f : frames) {
    out << format_frame(f) << '\n';
  }
}

void write_telemetry_file(const std::filesystem::path& path, const std::vector<TelemetryFrame>& frames,
                          const std::string& trailer) {
  std::ofstream out(path);
  if (!out) throw StreamError("cannot write telemetry file: " + path.string());
  write_telemetry(out, frames);
  if (!trailer.empty()) {
    out << "# " << trailer << '\n';
  }
  if (!out) throw StreamError("write failed: " + path.string());
}

}  // namespace vrcloak
