// Copyright 2026 The jagged Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JAGGED_TESTS_SCENARIO_UTIL_HPP
#define JAGGED_TESTS_SCENARIO_UTIL_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "jagged/json_util.hpp"

inline std::string scenario_text(const std::string& name) {
  std::ifstream in(std::string(JAGGED_SCENARIO_DIR) + "/" + name + ".json");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json scenario_doc(const std::string& name) { return jag::parse_json(scenario_text(name)); }

#endif  // JAGGED_TESTS_SCENARIO_UTIL_HPP
