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

#ifndef VRCLOAK_RANDOM_HPP_
#define VRCLOAK_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace vrcloak {

// Seeded, replayable random stream. Identical seeds yield byte-identical
// sample sequences. A RandomSource is single-owner: it is moved, never
// shared across concurrent tasks; independent consumers derive their own
// substreams from (seed, session id, label) so that draw order in one
// consumer can never shift another's samples.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;
  RandomSource(RandomSource&&) = default;
  RandomSource& operator=(RandomSource&&) = default;

  // Child stream keyed by (this seed, session_id, label), independent of how
  // many draws have been taken from the parent.
  RandomSource derive(std::uint64_t session_id, std::string_view label) const;

  // Uniform draw on the open interval (0,1); never exactly 0 or 1.
  double uniform_open();

  std::uint64_t next_u64();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used for seed mixing and substream derivation.
std::uint64_t mix_u64(std::uint64_t x);

// FNV-1a over a label, for naming substreams.
std::uint64_t hash_label(std::string_view label);

}  // namespace vrcloak

#endif  // VRCLOAK_RANDOM_HPP_
