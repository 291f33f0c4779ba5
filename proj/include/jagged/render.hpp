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

#ifndef JAGGED_RENDER_HPP
#define JAGGED_RENDER_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "jagged/paths.hpp"
#include "jagged/tmt.hpp"

namespace jag {

struct PathTrace {
  std::string name;
  JaggedPath path;
};

struct Traces {
  std::vector<PathTrace> paths;
  std::vector<TropicalMorseTree> trees;  // one-dimensional scenarios only
};

// Trace documents: {"paths": [...], "trees": [...]}. Bends name their ray.
nlohmann::json traces_to_json(const Structure& d, const Traces& t);
Traces traces_from_json(const nlohmann::json& doc, const ChartComplex& c, const Structure& d);

struct RenderPlan {
  // native: every cell in its own chart coordinates. row: cells side by side.
  // automatic: native unless two cells overlap there.
  enum class Layout { automatic, native, row };
  Layout layout = Layout::automatic;
  std::vector<int> cells;  // cells to draw; empty means all
  double scale = 160;      // pixels per chart unit
  double margin = 24;
  bool labels = true;
  // Path colours indexed by bend count; the last entry repeats.
  std::vector<std::string> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::string cell_fill = "#f4f4f0";
  std::string ray_color = "#555555";
};

// SVG 1.1 document with groups cells, edges (with singular marks), rays,
// paths (with bend markers), trees and labels. Throws a render error when a
// trace refers to a missing cell, ray or segment.
std::string render_svg(const ChartComplex& c, const Structure& d, const Traces& traces, const RenderPlan& plan);

}  // namespace jag

#endif  // JAGGED_RENDER_HPP
