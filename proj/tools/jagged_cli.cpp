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

// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jagged_c.h"

#ifndef JAGGED_DEFAULT_SCENARIO_DIR
#define JAGGED_DEFAULT_SCENARIO_DIR ""
#endif

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInputError = 2 };

struct Common {
  jg_options opts{};
  bool json = false;
};

// Accepts a path, or a bare name looked up in $JAGGED_SCENARIO_DIR and then
// the bundled scenario directory.
std::string resolve_scenario(const std::string& name) {
  if (fs::exists(name)) return name;
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("JAGGED_SCENARIO_DIR"); env && *env) dirs.emplace_back(env);
  if (*JAGGED_DEFAULT_SCENARIO_DIR) dirs.emplace_back(JAGGED_DEFAULT_SCENARIO_DIR);
  for (const auto& d : dirs)
    for (const auto& candidate : {name, name + ".json"}) {
      fs::path p = fs::path(d) / fs::path(candidate).filename();
      if (fs::exists(p)) return p.string();
    }
  return name;
}

struct Scenario {
  jg_scenario* handle = nullptr;
  ~Scenario() { jg_scenario_free(handle); }
};

int report(jg_status st, jg_result* r, const Common& common, const std::string& output = {}) {
  if (st > JG_CHECK_FAILED) {
    std::cerr << "error: " << jg_last_error() << "\n";
    return kInputError;
  }
  const char* warnings = jg_result_warnings(r);
  if (*warnings) std::cerr << "warning: " << warnings;
  std::string body = common.json ? std::string(jg_result_json(r)) + "\n" : jg_result_text(r);
  jg_result_free(r);
  if (!output.empty()) {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return kInputError;
    }
    out << body;
  } else {
    std::cout << body;
  }
  return st == JG_OK ? kOk : kCheckFailed;
}

bool load(const std::string& name, Scenario& s) {
  std::string path = resolve_scenario(name);
  if (jg_scenario_load(path.c_str(), &s.handle) != JG_OK) {
    std::cerr << "error: " << path << ": " << jg_last_error() << "\n";
    return false;
  }
  return true;
}

std::string read_file(const std::string& path, bool* ok) {
  std::ifstream in(path);
  *ok = static_cast<bool>(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta functions from jagged paths on integral affine manifolds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(jg_version()));

  Common common;
  jg_options_init(&common.opts);
  bool stable = false;
  app.add_flag("--json", common.json, "Machine-readable output");
  app.add_option("--torder,-k", common.opts.torder, "t-order cutoff")->capture_default_str();
  app.add_option("--max-bends", common.opts.max_bends, "Bends per path")->capture_default_str();
  app.add_option("--lmax", common.opts.max_length, "Wall-monomial length cutoff")->capture_default_str();
  app.add_option("--denominator-bound", common.opts.denominator_bound, "Generic point denominators")
      ->capture_default_str();
  app.add_option("--seed", common.opts.seed, "Sampler seed")->capture_default_str();
  app.add_option("--cone-height", common.opts.cone_height, "Truncated cone height")->capture_default_str();
  app.add_flag("--check-stable", stable, "Warn when max_bends + 2, L_max + 2 changes the answer");

  std::string scenario;
  auto with_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario,-s", scenario, "Scenario file or bundled name")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario");
  with_scenario(validate);

  std::string from, to;
  auto* lift = app.add_subcommand("lift", "Jagged paths and the lift of a theta function at a point");
  with_scenario(lift);
  lift->add_option("--from", from, "Basis point: LABEL, cell:x,y or x,y, with optional @level")->required();
  lift->add_option("--to", to, "Target point in general position")->required();

  std::vector<std::string> factors;
  bool pairs = false;
  auto* multiply = app.add_subcommand("multiply", "Product of theta functions");
  with_scenario(multiply);
  multiply->add_option("--factors", factors, "Basis points")->required()->expected(1, -1);
  multiply->add_flag("--pairs", pairs, "Use balanced pairs of jagged paths (two factors)");

  int degree = 2;
  auto* relations = app.add_subcommand("relations", "Relations among the level-1 theta functions");
  with_scenario(relations);
  relations->add_option("--degree", degree, "Highest degree")->capture_default_str();

  std::int64_t level = 1;
  std::string without;
  auto* consistency = app.add_subcommand("consistency", "Check that lifts agree across walls");
  with_scenario(consistency);
  consistency->add_option("--level", level, "Level of the basis points")->capture_default_str();
  consistency->add_option("--without", without, "Drop the named ray first");

  int order = 5;
  auto* normalize = app.add_subcommand("normalize", "Normalization series of the central function");
  normalize->add_option("--order", order, "Number of coefficients")->capture_default_str();

  std::int64_t max_level = 2;
  int samples = 2;
  auto* mumford = app.add_subcommand("mumford-check", "Compare with lattice sums on a torus");
  with_scenario(mumford);
  mumford->add_option("--max-level", max_level, "Highest level")->capture_default_str();
  mumford->add_option("--samples", samples, "Sample points per cell")->capture_default_str();

  std::vector<std::int64_t> levels;
  std::vector<std::string> points;
  auto* tmt = app.add_subcommand("tmt", "Tropical Morse trees on a one-dimensional torus");
  with_scenario(tmt);
  tmt->add_option("--levels", levels, "Levels l_0, ..., l_d")->delimiter(',')->required();
  tmt->add_option("--points", points, "Points p_{0,1}, ..., p_{d-1,d}")->delimiter(',')->required();

  std::string traces, output, layout = "auto";
  std::vector<int> cells;
  double scale = 160;
  bool no_labels = false;
  auto* render = app.add_subcommand("render", "SVG drawing of the charts, rays and traces");
  with_scenario(render);
  render->add_option("--traces", traces, "Trace document (the --json output of lift or tmt)");
  render->add_option("--from", from, "Draw the jagged paths from this basis point");
  render->add_option("--to", to, "... to this point");
  render->add_option("--layout", layout, "auto, native or row")->capture_default_str();
  render->add_option("--cells", cells, "Cells to draw")->delimiter(',');
  render->add_option("--scale", scale, "Pixels per unit")->capture_default_str();
  render->add_flag("--no-labels", no_labels, "Omit label text");
  render->add_option("--output,-o", output, "Write the SVG here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  common.opts.check_stability = stable ? 1 : 0;
  const jg_options* opts = &common.opts;

  if (normalize->parsed()) {
    jg_result* r = nullptr;
    jg_status st = jg_normalize(order, &r);
    return report(st, r, common);
  }
  if (validate->parsed()) {
    bool ok = false;
    std::string path = resolve_scenario(scenario);
    std::string text = read_file(path, &ok);
    if (!ok) {
      std::cerr << "error: cannot open " << path << "\n";
      return kInputError;
    }
    jg_result* r = nullptr;
    jg_status st = jg_validate(text.c_str(), &r);
    return report(st, r, common);
  }

  Scenario s;
  if (!load(scenario, s)) return kInputError;
  jg_result* r = nullptr;

  if (lift->parsed()) {
    jg_status st = jg_lift(s.handle, from.c_str(), to.c_str(), opts, &r);
    return report(st, r, common);
  }
  if (multiply->parsed()) {
    if (pairs) {
      if (factors.size() != 2) {
        std::cerr << "error: --pairs takes exactly two factors\n";
        return kInputError;
      }
      jg_status st = jg_mu2(s.handle, factors[0].c_str(), factors[1].c_str(), opts, &r);
      return report(st, r, common);
    }
    auto f = c_strings(factors);
    jg_status st = jg_multiply(s.handle, f.data(), f.size(), opts, &r);
    return report(st, r, common);
  }
  if (relations->parsed()) {
    jg_status st = jg_relations(s.handle, degree, opts, &r);
    return report(st, r, common);
  }
  if (consistency->parsed()) {
    jg_status st = jg_consistency(s.handle, level, without.empty() ? nullptr : without.c_str(), opts, &r);
    return report(st, r, common);
  }
  if (mumford->parsed()) {
    jg_status st = jg_mumford_check(s.handle, max_level, samples, opts, &r);
    return report(st, r, common);
  }
  if (tmt->parsed()) {
    if (levels.size() != points.size() + 1) {
      std::cerr << "error: need one more level than points\n";
      return kInputError;
    }
    auto p = c_strings(points);
    jg_status st = jg_tmt(s.handle, levels.data(), p.data(), p.size(), opts, &r);
    return report(st, r, common);
  }
  if (render->parsed()) {
    std::string trace_text;
    if (!traces.empty()) {
      bool ok = false;
      trace_text = read_file(traces, &ok);
      if (!ok) {
        std::cerr << "error: cannot open " << traces << "\n";
        return kInputError;
      }
    } else if (!from.empty() || !to.empty()) {
      if (from.empty() || to.empty()) {
        std::cerr << "error: --from and --to go together\n";
        return kInputError;
      }
      jg_result* paths = nullptr;
      if (jg_lift(s.handle, from.c_str(), to.c_str(), opts, &paths) != JG_OK) {
        std::cerr << "error: " << jg_last_error() << "\n";
        return kInputError;
      }
      trace_text = jg_result_json(paths);
      jg_result_free(paths);
    }
    std::ostringstream plan;
    plan << "{\"layout\":\"" << layout << "\",\"scale\":" << scale << ",\"labels\":" << (no_labels ? "false" : "true")
         << ",\"cells\":[";
    for (std::size_t i = 0; i < cells.size(); ++i) plan << (i ? "," : "") << cells[i];
    plan << "]}";
    jg_status st = jg_render(s.handle, trace_text.empty() ? nullptr : trace_text.c_str(), plan.str().c_str(), &r);
    return report(st, r, common, output);
  }
  return kInputError;
}
