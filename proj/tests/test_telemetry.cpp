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

#include <doctest.h>
#include <sstream>

#include "vrcloak/errors.hpp"
#include "vrcloak/random.hpp"

using namespace vrcloak;

namespace {

TelemetryFrame random_frame(RandomSource& rng, double t) {
  TelemetryFrame f;
  f.t_ms = t;
  auto v3 = [&rng]() {
    return Eigen::Vector3d(rng.uniform_open() * 4 - 2, rng.uniform_open() * 2,
                           rng.uniform_open() * 4 - 2);
  };
  f.head = v3();
  f.right = v3();
  f.left = v3();
  if (rng.uniform_open() < 0.6) f.eyes = EyePair{v3(), v3()};
  if (rng.uniform_open() < 0.6) f.pitch_hz = 85 + rng.uniform_open() * 170;
  if (rng.uniform_open() < 0.3) {
    f.events.push_back(Event{EventKind::stimulus, Hand::none});
    f.events.push_back(Event{EventKind::response, Hand::right});
  }
  if (rng.uniform_open() < 0.3) f.events.push_back(Event{EventKind::interaction, Hand::left});
  if (rng.uniform_open() < 0.5) f.rtt_ms = rng.uniform_open() * 60;
  return f;
}

}  // namespace

TEST_CASE("frames round-trip bit-exactly through the line format") {
  RandomSource rng(2024);
  std::vector<TelemetryFrame> frames;
  for (int i = 0; i < 500; ++i) frames.push_back(random_frame(rng, i * 11.1111 + rng.uniform_open()));

  std::ostringstream out;
  write_telemetry(out, frames);
  std::istringstream in(out.str());
  std::vector<TelemetryFrame> back = read_telemetry(in);

  REQUIRE(back.size() == frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    CHECK(back[i] == frames[i]);
  }
}

TEST_CASE("reader reports malformed lines with their line number") {
  std::istringstream in("0 0 1.7 0 0.2 1.1 0 -0.2 1.1 0\nnot a frame\n");
  try {
    read_telemetry(in, "input.txt");
    FAIL("expected StreamError");
  } catch (const StreamError& e) {
    CHECK(std::string(e.what()).find("input.txt:2") != std::string::npos);
  }
}

TEST_CASE("reader rejects unknown trailing fields and bad groups") {
  std::istringstream a("0 0 1.7 0 0.2 1.1 0 -0.2 1.1 0 bogus 1\n");
  CHECK_THROWS_AS(read_telemetry(a), StreamError);
  std::istringstream b("0 0 1.7 0 0.2 1.1 0 -0.2 1.1 0 pitch\n");
  CHECK_THROWS_AS(read_telemetry(b), StreamError);
  std::istringstream c("0 0 1.7 0 0.2 1.1 0 -0.2 1.1 0 event stimulus middle\n");
  CHECK_THROWS_AS(read_telemetry(c), StreamError);
}

TEST_CASE("reader enforces strictly increasing timestamps") {
  std::istringstream in(
      "0 0 1.7 0 0.2 1.1 0 -0.2 1.1 0\n"
      "11 0 1.7 0 0.2 1.1 0 -0.2 1.1 0\n"
      "11 0 1.7 0 0.2 1.1 0 -0.2 1.1 0\n");
  try {
    read_telemetry(in, "s.txt");
    FAIL("expected StreamError");
  } catch (const StreamError& e) {
    CHECK(std::string(e.what()).find("s.txt:3") != std::string::npos);
  }
}

TEST_CASE("comment lines are skipped") {
  std::istringstream in(
      "# vrcloak telemetry\n"
      "0 0 1.7 0 0.2 1.1 0 -0.2 1.1 0\n"
      "# trailing report\n");
  CHECK(read_telemetry(in).size() == 1);
}
