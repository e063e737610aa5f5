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

#include "vrcloak/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vrcloak/errors.hpp"

namespace vrcloak {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

IniSections parse_ini(std::istream& in, const std::string& context) {
  IniSections sections;
  std::string line;
  std::string current;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    std::string where = context + ":" + std::to_string(line_no);
    if (t.front() == '[') {
      if (t.back() != ']') throw ValidationError(where + ": unterminated section header");
      current = trim(t.substr(1, t.size() - 2));
      if (current.empty()) throw ValidationError(where + ": empty section name");
      sections[current];
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw ValidationError(where + ": expected key = value");
    if (current.empty()) throw ValidationError(where + ": key outside any [section]");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ValidationError(where + ": empty key");
    auto [it, inserted] = sections[current].emplace(key, value);
    (void)it;
    if (!inserted) throw ValidationError(where + ": duplicate key '" + key + "'");
  }
  return sections;
}

IniSections parse_ini_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  return parse_ini(in, path.string());
}

bool parse_bool(const std::string& value, const std::string& context) {
  if (value == "on" || value == "true" || value == "yes" || value == "1") return true;
  if (value == "off" || value == "false" || value == "no" || value == "0") return false;
  throw ValidationError(context + ": expected boolean, got '" + value + "'");
}

double parse_number(const std::string& value, const std::string& context) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ValidationError(context + ": expected number, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw ValidationError(context + ": expected number, got '" + value + "'");
  }
  return v;
}

GroundTruth parse_truth_section(const std::map<std::string, std::string>& section,
                                const std::string& context) {
  GroundTruth t;
  for (const auto& [key, value] : section) {
    std::string where = context + " [truth] " + key;
    if (key == "height") {
      t.height = parse_number(value, where);
    } else if (key == "arm_r") {
      t.arm_r = parse_number(value, where);
    } else if (key == "arm_l") {
      t.arm_l = parse_number(value, where);
    } else if (key == "ipd") {
      t.ipd = parse_number(value, where);
    } else if (key == "pitch") {
      t.pitch = parse_number(value, where);
    } else if (key == "depth") {
      t.depth = parse_number(value, where);
    } else if (key == "room_w") {
      t.room_w = parse_number(value, where);
    } else if (key == "room_l") {
      t.room_l = parse_number(value, where);
    } else if (key == "right_handed") {
      t.right_handed = parse_bool(value, where);
    } else {
      throw ValidationError(where + ": unknown truth key");
    }
  }
  return t;
}

SessionConfigFile parse_session_config(const IniSections& sections, const std::string& context) {
  SessionConfigFile out;
  for (const auto& [name, section] : sections) {
    if (name == "level") {
      for (const auto& [key, value] : section) {
        if (key != "level") throw ValidationError(context + " [level]: unknown key '" + key + "'");
        out.defense.level = level_from_string(value);
      }
    } else if (name == "features") {
      for (const auto& [key, value] : section) {
        Feature f = feature_from_string(key);
        bool on = parse_bool(value, context + " [features] " + key);
        if (on) {
          out.defense.enabled.insert(f);
        } else {
          out.defense.enabled.erase(f);
        }
      }
    } else if (name == "overrides") {
      for (const auto& [key, value] : section) {
        Feature f = feature_from_string(key);
        out.defense.epsilon_overrides[f] = parse_number(value, context + " [overrides] " + key);
      }
    } else if (name == "seed") {
      for (const auto& [key, value] : section) {
        if (key == "master") {
          out.defense.master_seed =
              static_cast<std::uint64_t>(parse_number(value, context + " [seed] master"));
        } else if (key == "rerandomize") {
          out.defense.rerandomize_per_session = parse_bool(value, context + " [seed] rerandomize");
        } else {
          throw ValidationError(context + " [seed]: unknown key '" + key + "'");
        }
      }
    } else if (name == "truth") {
      out.truth = parse_truth_section(section, context);
    } else {
      throw ValidationError(context + ": unknown section [" + name + "]");
    }
  }
  out.defense.validate();
  return out;
}

SessionConfigFile load_session_config(const std::filesystem::path& path) {
  return parse_session_config(parse_ini_file(path), path.string());
}

GroundTruth load_truth_file(const std::filesystem::path& path) {
  IniSections sections = parse_ini_file(path);
  auto it = sections.find("truth");
  if (it == sections.end()) {
    throw ValidationError(path.string() + ": no [truth] section");
  }
  return parse_truth_section(it->second, path.string());
}

void write_truth_file(const std::filesystem::path& path, const GroundTruth& t) {
  std::ofstream out(path);
  if (!out) throw StreamError("cannot write truth file: " + path.string());
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "[truth]\n";
  out << "height = " << num(t.height) << "\n";
  out << "arm_r = " << num(t.arm_r) << "\n";
  out << "arm_l = " << num(t.arm_l) << "\n";
  out << "ipd = " << num(t.ipd) << "\n";
  out << "pitch = " << num(t.pitch) << "\n";
  out << "depth = " << num(t.depth) << "\n";
  out << "room_w = " << num(t.room_w) << "\n";
  out << "room_l = " << num(t.room_l) << "\n";
  out << "right_handed = " << (t.right_handed ? "yes" : "no") << "\n";
  if (!out) throw StreamError("write failed: " + path.string());
}

}  // namespace vrcloak
