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

#include "vrcloak/random.hpp"

namespace vrcloak {

std::uint64_t mix_u64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix_u64(seed)) {}

RandomSource RandomSource::derive(std::uint64_t session_id, std::string_view label) const {
  std::uint64_t child = mix_u64(seed_ ^ mix_u64(session_id) ^ hash_label(label));
  return RandomSource(child);
}

double RandomSource::uniform_open() {
  // 53-bit mantissa shifted into (0,1): minimum 2^-54, maximum 1 - 2^-54.
  // Open-interval draws keep log() finite in the Laplace inverse CDF.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t RandomSource::next_u64() { return engine_(); }

}  // namespace vrcloak
