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
// Sectioned key-value config files ([section] / key = value, '#' comments).
// Key names are documented in the README; all values are SI units.

#ifndef VRCLOAK_CONFIG_HPP_
#define VRCLOAK_CONFIG_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "vrcloak/session.hpp"

namespace vrcloak {

using IniSections = std::map<std::string, std::map<std::string, std::string>>;

// Throws ValidationError with line context on malformed input or duplicate keys.
IniSections parse_ini(std::istream& in, const std::string& context = "<config>");
IniSections parse_ini_file(const std::filesystem::path& path);

struct SessionConfigFile {
  DefenseConfig defense;
  std::optional<GroundTruth> truth;  // optional [truth] section
};

SessionConfigFile load_session_config(const std::filesystem::path& path);
SessionConfigFile parse_session_config(const IniSections& sections, const std::string& context);

// [truth] section readers/writers, shared by the replay and attack commands.
GroundTruth parse_truth_section(const std::map<std::string, std::string>& section,
                                const std::string& context);
GroundTruth load_truth_file(const std::filesystem::path& path);
void write_truth_file(const std::filesystem::path& path, const GroundTruth& truth);

bool parse_bool(const std::string& value, const std::string& context);
double parse_number(const std::string& value, const std::string& context);

}  // namespace vrcloak

#endif  // VRCLOAK_CONFIG_HPP_
