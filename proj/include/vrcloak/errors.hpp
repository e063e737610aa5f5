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

#ifndef VRCLOAK_ERRORS_HPP_
#define VRCLOAK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vrcloak {

// Bad inputs, parameters, configs, or file contents. CLI maps this to exit 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent data streams. CLI maps this to exit 1.
class StreamError : public std::runtime_error {
 public:
  explicit StreamError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vrcloak

#endif  // VRCLOAK_ERRORS_HPP_
