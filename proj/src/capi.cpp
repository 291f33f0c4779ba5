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

#include "jagged_c.h"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jagged/error.hpp"
#include "jagged/json_util.hpp"
#include "jagged/mumford.hpp"
#include "jagged/render.hpp"
#include "jagged/theta.hpp"
#include "jagged/tmt.hpp"

using nlohmann::json;
using namespace jag;

struct jg_scenario {
  json doc;
  ChartComplex c;
  Structure d;
  std::optional<MumfordData> torus;
  std::unique_ptr<ThetaEngine> engine;
  Cutoffs engine_cut;
  std::uint64_t engine_seed = 0;
};

struct jg_result {
  jg_status status = JG_OK;
  std::string text, json, warnings;
};

namespace {

thread_local std::string last_error;

jg_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return JG_ERR_PARSE;
    case ErrorKind::validation: return JG_ERR_VALIDATION;
    case ErrorKind::geometry: return JG_ERR_GEOMETRY;
    case ErrorKind::genericity: return JG_ERR_GENERICITY;
    case ErrorKind::degenerate: return JG_ERR_DEGENERATE;
    case ErrorKind::inconsistent: return JG_ERR_INCONSISTENT;
    case ErrorKind::unsupported: return JG_ERR_UNSUPPORTED;
    case ErrorKind::render: return JG_ERR_RENDER;
    case ErrorKind::domain:
    case ErrorKind::config: return JG_ERR_ARGUMENT;
    case ErrorKind::non_invertible:
    case ErrorKind::check_failed: return JG_ERR_INTERNAL;
  }
  return JG_ERR_INTERNAL;
}

jg_status failure(jg_status s, const std::string& what) {
  last_error = what;
  return s;
}

// Runs body, which fills a result; converts exceptions to status codes.
template <class F>
jg_status guarded(jg_result** out, F&& body) {
  if (!out) return failure(JG_ERR_ARGUMENT, "null result pointer");
  *out = nullptr;
  try {
    auto r = std::make_unique<jg_result>();
    body(*r);
    jg_status s = r->status;
    *out = r.release();
    return s;
  } catch (const Error& e) {
    return failure(status_of(e.kind()), std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const json::exception& e) {
    return failure(JG_ERR_PARSE, std::string("parse error: ") + e.what());
  } catch (const std::bad_alloc&) {
    return failure(JG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return failure(JG_ERR_INTERNAL, e.what());
  }
}

Cutoffs cutoffs_of(const jg_options& o) {
  Cutoffs cut;
  cut.torder = o.torder;
  cut.max_bends = o.max_bends;
  cut.max_length = o.max_length;
  return cut;
}

Cutoffs bumped(Cutoffs cut) {
  cut.max_bends += 2;
  cut.max_length += 2;
  return cut;
}

jg_options options_or_default(const jg_options* opts) {
  jg_options o;
  jg_options_init(&o);
  if (opts) o = *opts;
  if (o.torder < 0 || o.max_bends < 0 || o.max_length < 0 || o.denominator_bound < 2 || o.cone_height < 1)
    fail(ErrorKind::domain, "cutoffs must be non-negative, the denominator bound at least 2");
  return o;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorKind::domain, std::string("missing argument: ") + what);
}

ThetaEngine& engine_for(jg_scenario* s, const Cutoffs& cut, std::uint64_t seed) {
  bool same = s->engine && s->engine_seed == seed && s->engine_cut.torder == cut.torder &&
              s->engine_cut.max_bends == cut.max_bends && s->engine_cut.max_length == cut.max_length;
  if (!same) {
    s->engine = std::make_unique<ThetaEngine>(s->c, s->d, cut, seed);
    s->engine_cut = cut;
    s->engine_seed = seed;
  }
  return *s->engine;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

struct PointSpec {
  Point p;
  std::int64_t level = 1;
  std::string name;
};

// "LABEL", "cell:x,y" or "x,y", optionally followed by "@level".
PointSpec parse_point(const ChartComplex& c, const std::string& text) {
  PointSpec spec;
  std::string body = text;
  if (auto at = body.find('@'); at != std::string::npos) {
    spec.level = to_int64(parse_rational(body.substr(at + 1)));
    body = body.substr(0, at);
  }
  if (auto l = c.label(body)) {
    spec.p = *l;
    spec.name = body;
    return spec;
  }
  int cell = -1;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    cell = static_cast<int>(to_int64(parse_rational(body.substr(0, colon))));
    body = body.substr(colon + 1);
  }
  Coords x;
  for (const auto& part : split(body, ',')) x.push_back(parse_rational(part));
  if (static_cast<int>(x.size()) != c.dim)
    fail(ErrorKind::parse, "point '" + text + "' needs " + std::to_string(c.dim) + " coordinates or a label");
  if (cell < 0) {
    // Prefer a cell holding the point in its interior.
    for (int pass = 0; pass < 2 && cell < 0; ++pass)
      for (std::size_t i = 0; i < c.cells.size() && cell < 0; ++i) {
        auto loc = c.locate(static_cast<int>(i), x);
        if (loc.kind == ChartComplex::Location::interior || (pass == 1 && loc.kind != ChartComplex::Location::outside))
          cell = static_cast<int>(i);
      }
    if (cell < 0) fail(ErrorKind::domain, "point '" + text + "' lies in no cell chart");
  }
  if (cell >= static_cast<int>(c.cells.size())) fail(ErrorKind::domain, "point '" + text + "' names a missing cell");
  if (c.locate(cell, x).kind == ChartComplex::Location::outside)
    fail(ErrorKind::domain, "point '" + text + "' is outside cell " + std::to_string(cell));
  spec.p = {cell, x};
  spec.name = text;
  return spec;
}

json point_json(const Point& p) {
  json x = json::array();
  for (const auto& a : p.x) x.push_back(to_string(a));
  return json::array({p.cell, x});
}

json series_json(const ChartComplex& c, int cell, const TruncatedSeries& s) {
  json out = json::array();
  for (const auto& [e, t] : s.terms())
    out.push_back({{"exponent", e}, {"coeff", to_string(t.coeff)}, {"torder", to_string(c.torder(cell, e))}});
  return out;
}

json poly_json(const Poly& p) {
  json out = json::array();
  for (int i = 0; i <= p.degree(); ++i) out.push_back(to_string(p.coeff(i)));
  return out;
}

json expansion_json(const ChartComplex& c, const ThetaExpansion& e) {
  json terms = json::array();
  for (const auto& [p, poly] : e.coeffs)
    terms.push_back({{"point", point_json(p)}, {"name", basis_name(c, p, e.level)}, {"coeff", poly.to_string()},
                     {"t_coeffs", poly_json(poly)}});
  return {{"level", e.level}, {"terms", terms}};
}

// A nearby point in general position, for error messages.
std::string suggest_generic(const ChartComplex& c, const Structure& d, const Point& x) {
  for (long i = 1; i <= 64; ++i)
    for (int sx : {1, -1})
      for (int sy : {1, -1}) {
        Point y = x;
        y.x[0] += make_rational(sx * i, 997);
        if (c.dim == 2) y.x[1] += make_rational(sy * i * 3, 991);
        if (c.locate(y.cell, y.x).kind != ChartComplex::Location::interior) continue;
        try {
          check_generic(c, d, y);
          return to_string(y);
        } catch (const Error&) {
        }
      }
  return {};
}

std::string bend_text(const Structure& d, const JaggedPath& p) {
  std::string out;
  for (const auto& b : p.bends) {
    if (!out.empty()) out += ", ";
    out += d.rays[b.ray].name + " at " + std::to_string(p.segments[b.segment].cell) + ":" +
           to_string(p.segments[b.segment].a);
  }
  return out;
}

}  // namespace

extern "C" {

void jg_options_init(jg_options* opts) {
  if (!opts) return;
  opts->torder = 6;
  opts->max_bends = 8;
  opts->max_length = 12;
  opts->denominator_bound = 997;
  opts->seed = 0;
  opts->cone_height = 8;
  opts->check_stability = 0;
}

const char* jg_version(void) { return "1.0.0"; }

const char* jg_status_name(jg_status status) {
  switch (status) {
    case JG_OK: return "ok";
    case JG_CHECK_FAILED: return "check failed";
    case JG_ERR_ARGUMENT: return "invalid argument";
    case JG_ERR_IO: return "i/o error";
    case JG_ERR_PARSE: return "parse error";
    case JG_ERR_VALIDATION: return "validation error";
    case JG_ERR_GEOMETRY: return "geometry error";
    case JG_ERR_GENERICITY: return "genericity error";
    case JG_ERR_DEGENERATE: return "degenerate moduli";
    case JG_ERR_INCONSISTENT: return "structure inconsistency";
    case JG_ERR_UNSUPPORTED: return "unsupported";
    case JG_ERR_RENDER: return "render error";
    case JG_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* jg_last_error(void) { return last_error.c_str(); }

jg_status jg_scenario_parse(const char* json_text, jg_scenario** out) {
  if (!out || !json_text) return failure(JG_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  try {
    auto s = std::make_unique<jg_scenario>();
    s->doc = parse_json(json_text);
    s->c = complex_from_json(s->doc);
    s->d = structure_from_json(s->doc, s->c);
    if (s->doc.contains("torus")) s->torus = mumford_from_json(s->doc);
    *out = s.release();
    return JG_OK;
  } catch (const Error& e) {
    return failure(status_of(e.kind()), std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const std::exception& e) {
    return failure(JG_ERR_PARSE, std::string("parse error: ") + e.what());
  }
}

jg_status jg_scenario_load(const char* path, jg_scenario** out) {
  if (!out || !path) return failure(JG_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path);
  if (!in) return failure(JG_ERR_IO, std::string("cannot open ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return jg_scenario_parse(ss.str().c_str(), out);
}

void jg_scenario_free(jg_scenario* s) { delete s; }

const char* jg_scenario_name(const jg_scenario* s) { return s ? s->c.name.c_str() : ""; }

void jg_result_free(jg_result* r) { delete r; }
jg_status jg_result_status(const jg_result* r) { return r ? r->status : JG_ERR_ARGUMENT; }
const char* jg_result_text(const jg_result* r) { return r ? r->text.c_str() : ""; }
const char* jg_result_json(const jg_result* r) { return r ? r->json.c_str() : ""; }
const char* jg_result_warnings(const jg_result* r) { return r ? r->warnings.c_str() : ""; }

jg_status jg_validate(const char* json_text, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(json_text, "scenario text");
    json doc = parse_json(json_text);
    ValidationReport rep;
    ChartComplex c = complex_from_json(doc, &rep);
    if (rep.ok()) {
      try {
        Structure d = structure_from_json(doc, c);
        rep.add("structure", true, std::to_string(d.rays.size()) + " rays");
        if (doc.contains("torus")) {
          mumford_from_json(doc);
          rep.add("torus data", true);
        }
      } catch (const Error& e) {
        rep.add("structure", false, e.what());
      }
    }
    int singular = static_cast<int>(c.singular_vertices.size());
    for (const auto& g : c.gluings) singular += g.split.has_value();
    json checks = json::array();
    for (const auto& l : rep.checks) checks.push_back({{"name", l.name}, {"ok", l.ok}, {"detail", l.detail}});
    r.json = json{{"ok", rep.ok()}, {"name", c.name}, {"cells", c.cells.size()}, {"singular_points", singular},
                  {"checks", checks}}
                 .dump(2);
    std::ostringstream o;
    if (rep.ok()) {
      std::size_t n = c.cells.size();
      o << "OK: " << n << (n == 1 ? " cell, " : " cells, ") << singular
        << (singular == 1 ? " singular point" : " singular points") << (c.has_phi ? ", phi convex" : "") << "\n";
    } else {
      int bad = 0;
      for (const auto& l : rep.checks) bad += !l.ok;
      o << "FAILED: " << bad << " of " << rep.checks.size() << " checks\n";
      for (const auto& l : rep.checks)
        if (!l.ok) o << "  " << l.name << (l.detail.empty() ? "" : ": " + l.detail) << "\n";
      r.status = JG_CHECK_FAILED;
    }
    r.text = o.str();
  });
}

jg_status jg_lift(jg_scenario* s, const char* from, const char* to, const jg_options* opts, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    need(from, "basis point");
    need(to, "target point");
    jg_options o = options_or_default(opts);
    PointSpec m = parse_point(s->c, from);
    PointSpec x = parse_point(s->c, to);
    std::vector<JaggedPath> paths;
    try {
      paths = enumerate_jagged(s->c, s->d, m.p, m.level, x.p, cutoffs_of(o));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::genericity) throw;
      std::string what = e.what();
      if (what.find("try ") != std::string::npos) throw;
      std::string hint = suggest_generic(s->c, s->d, x.p);
      fail(ErrorKind::genericity, what + (hint.empty() ? "" : "; try " + hint));
    }
    Cutoffs cut = cutoffs_of(o);
    TruncatedSeries l = sum_paths(s->c, paths, x.p.cell, cut);
    if (o.check_stability) {
      Cutoffs more = bumped(cut);
      auto again = sum_paths(s->c, enumerate_jagged(s->c, s->d, m.p, m.level, x.p, more), x.p.cell, more);
      if (!first_difference(l, again).empty())
        r.warnings += "lift changed under max_bends + 2, L_max + 2: " + first_difference(l, again) + "\n";
    }
    Traces t;
    std::ostringstream o2;
    o2 << m.name << " -> " << to_string(x.p) << ", level " << m.level << ": " << paths.size()
       << (paths.size() == 1 ? " path\n" : " paths\n");
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const auto& p = paths[i];
      o2 << "  path " << i + 1 << ": " << p.segments.size() << " segments, " << p.bends.size() << (p.bends.size() == 1 ? " bend" : " bends")
         << (p.bends.empty() ? "" : " (" + bend_text(s->d, p) + ")") << ", coeff " << to_string(p.last().coeff)
         << ", z^" << to_string(p.last().q) << "\n";
      t.paths.push_back({m.name + " #" + std::to_string(i + 1), p});
    }
    o2 << "lift = " << l.to_string() << "\n";
    r.text = o2.str();
    json j = traces_to_json(s->d, t);
    j["from"] = point_json(m.p);
    j["level"] = m.level;
    j["to"] = point_json(x.p);
    j["lift"] = series_json(s->c, x.p.cell, l);
    r.json = j.dump(2);
  });
}

jg_status jg_multiply(jg_scenario* s, const char* const* factors, size_t count, const jg_options* opts,
                      jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    need(factors, "factors");
    if (count < 1) fail(ErrorKind::domain, "need at least one factor");
    jg_options o = options_or_default(opts);
    std::vector<PointSpec> f;
    for (size_t i = 0; i < count; ++i) f.push_back(parse_point(s->c, factors[i] ? factors[i] : ""));
    auto run = [&](const Cutoffs& cut) {
      ThetaEngine& e = engine_for(s, cut, o.seed);
      if (count == 2) return e.multiply(f[0].p, f[0].level, f[1].p, f[1].level);
      ThetaExpansion acc = e.single(f[0].p, f[0].level);
      for (size_t i = 1; i < count; ++i) acc = e.multiply(acc, e.single(f[i].p, f[i].level));
      return acc;
    };
    ThetaExpansion prod = run(cutoffs_of(o));
    if (o.check_stability && !(run(bumped(cutoffs_of(o))) == prod))
      r.warnings += "product changed under max_bends + 2, L_max + 2\n";
    std::string lhs;
    for (const auto& x : f) {
      if (!lhs.empty()) lhs += "*";
      lhs += s->c.label(x.name) ? x.name : basis_name(s->c, x.p, x.level);
    }
    r.text = format_product(s->c, lhs, prod) + "\n";
    json j = expansion_json(s->c, prod);
    j["lhs"] = lhs;
    j["torder"] = o.torder;
    r.json = j.dump(2);
  });
}

jg_status jg_relations(jg_scenario* s, int32_t max_degree, const jg_options* opts, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    if (max_degree < 2) fail(ErrorKind::domain, "relations start in degree 2");
    jg_options o = options_or_default(opts);
    RelationSet rel = find_relations(engine_for(s, cutoffs_of(o), o.seed), max_degree);
    if (o.check_stability) {
      RelationSet again = find_relations(engine_for(s, bumped(cutoffs_of(o)), o.seed), max_degree);
      if (!same_relations(rel.relations, again.relations))
        r.warnings += "relations changed under max_bends + 2, L_max + 2\n";
    }
    json list = json::array();
    for (const auto& x : rel.relations) {
      std::string text = format_relation(x, rel.generators);
      r.text += text + "\n";
      list.push_back({{"degree", x.degree}, {"text", text}});
    }
    if (rel.relations.empty()) r.text = "no relations up to degree " + std::to_string(max_degree) + "\n";
    r.json = json{{"generators", rel.generators}, {"torder", o.torder}, {"relations", list}}.dump(2);
  });
}

jg_status jg_consistency(jg_scenario* s, int64_t level, const char* without_ray, const jg_options* opts,
                         jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    if (level < 1) fail(ErrorKind::domain, "level must be positive");
    jg_options o = options_or_default(opts);
    Structure d = s->d;
    if (without_ray && *without_ray) {
      if (d.find(without_ray) < 0) fail(ErrorKind::domain, std::string("no ray named ") + without_ray);
      d = s->d.without(without_ray, s->c);
    }
    auto samples = consistency_samples(s->c, d, enumerate_rational_points(s->c, level), level, o.seed);
    ConsistencyReport rep = check_consistency(s->c, d, samples, cutoffs_of(o));
    int bad = 0;
    json lines = json::array();
    std::ostringstream o2;
    for (const auto& l : rep.lines) {
      lines.push_back({{"m", point_json(l.sample.m)}, {"x1", point_json(l.sample.x1)},
                       {"x2", point_json(l.sample.x2)}, {"ok", l.ok}, {"detail", l.detail}});
      if (l.ok) continue;
      ++bad;
      o2 << "  " << basis_name(s->c, l.sample.m, l.sample.level) << ": " << to_string(l.sample.x1) << " -> "
         << to_string(l.sample.x2) << ": " << l.detail << "\n";
    }
    std::string head = bad == 0 ? "consistent: " + std::to_string(rep.lines.size()) + " samples\n"
                                : "INCONSISTENT: " + std::to_string(bad) + " of " + std::to_string(rep.lines.size()) +
                                      " samples\n";
    r.text = head + o2.str();
    r.json = json{{"ok", rep.ok()}, {"level", level}, {"samples", lines}}.dump(2);
    if (!rep.ok()) r.status = JG_CHECK_FAILED;
  });
}

jg_status jg_normalize(int32_t order, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    if (order < 1 || order > 12) fail(ErrorKind::domain, "order must be between 1 and 12");
    auto g = normalize_central_function(order);
    json list = json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
      r.text += (i ? ", " : "") + to_string(g[i]);
      list.push_back(to_string(g[i]));
    }
    r.text += "\n";
    r.json = json{{"order", order}, {"coefficients", list}}.dump(2);
  });
}

jg_status jg_mumford_check(jg_scenario* s, int64_t max_level, int32_t samples_per_cell, const jg_options* opts,
                           jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    if (!s->torus) fail(ErrorKind::unsupported, "scenario has no torus block");
    if (max_level < 1 || samples_per_cell < 1) fail(ErrorKind::domain, "level and samples must be positive");
    jg_options o = options_or_default(opts);
    EquivalenceReport rep = equivalence_check(*s->torus, s->c, s->d, max_level, cutoffs_of(o), samples_per_cell, o.seed);
    for (const auto& l : rep.lines) r.text += l + "\n";
    r.text += (rep.ok() ? "OK: " : "FAILED: ") + std::to_string(rep.lines.size() - rep.failures) + " of " +
              std::to_string(rep.lines.size()) + " comparisons agree\n";
    r.json = json{{"ok", rep.ok()}, {"failures", rep.failures}, {"lines", rep.lines}}.dump(2);
    if (!rep.ok()) r.status = JG_CHECK_FAILED;
  });
}

jg_status jg_tmt(jg_scenario* s, const int64_t* levels, const char* const* points, size_t count,
                 const jg_options* opts, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    need(levels, "levels");
    need(points, "points");
    if (!s->torus || s->torus->rank != 1) fail(ErrorKind::unsupported, "tmt needs a one-dimensional torus scenario");
    jg_options o = options_or_default(opts);
    std::vector<std::int64_t> lv(levels, levels + count + 1);
    std::vector<Coords> pts;
    for (size_t i = 0; i < count; ++i) {
      need(points[i], "point");
      pts.push_back({parse_rational(points[i])});
    }
    MuResult mu = mu_torus(*s->torus, lv, pts, o.torder);
    std::ostringstream o2;
    o2 << "tree            output   coeff    ord  contracted\n";
    for (const auto& t : mu.trees) {
      std::string contracted;
      for (const auto& e : t.contracted_edges()) contracted += (contracted.empty() ? "" : " ") + e;
      char line[256];
      std::snprintf(line, sizeof line, "%-15s %-8s %-8s %3lld  %s\n", t.tree.to_string().c_str(),
                    to_string(t.output).c_str(), to_string(t.coeff).c_str(), static_cast<long long>(t.ord),
                    contracted.empty() ? "-" : contracted.c_str());
      o2 << line;
    }
    json coeffs = json::array();
    o2 << "level " << mu.level << ":";
    if (mu.coeffs.empty()) o2 << " 0";
    o2 << "\n";
    for (const auto& [p, c] : mu.coeffs) {
      o2 << "  " << to_string(p) << ": " << c.to_string() << "\n";
      json pj = json::array();
      for (const auto& a : p) pj.push_back(to_string(a));
      coeffs.push_back({{"output", pj}, {"coeff", c.to_string()}, {"t_coeffs", poly_json(c)}});
    }
    r.text = o2.str();
    Traces t;
    t.trees = mu.trees;
    json j = traces_to_json(s->d, t);
    j["levels"] = lv;
    j["level"] = mu.level;
    j["coeffs"] = coeffs;
    r.json = j.dump(2);
  });
}

jg_status jg_mu2(jg_scenario* s, const char* first, const char* second, const jg_options* opts, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    need(first, "first factor");
    need(second, "second factor");
    jg_options o = options_or_default(opts);
    PointSpec a = parse_point(s->c, first), b = parse_point(s->c, second);
    Mu2Result mu = mu2(s->c, s->d, a.p, a.level, b.p, b.level, cutoffs_of(o), o.seed);
    std::string lhs = "mu2(" + a.name + "," + b.name + ")";
    std::ostringstream o2;
    o2 << format_product(s->c, lhs, mu.product) << "\n";
    o2 << mu.pairs.size() << " balanced pairs, " << mu.corrections << " ray corrections\n";
    Traces t;
    int i = 0;
    for (const auto& p : mu.pairs) {
      ++i;
      t.paths.push_back({"pair " + std::to_string(i) + " first", {p.first, {}, 0}});
      t.paths.push_back({"pair " + std::to_string(i) + " second", {p.second, {}, 0}});
    }
    r.text = o2.str();
    json j = expansion_json(s->c, mu.product);
    j["lhs"] = lhs;
    j["paths"] = traces_to_json(s->d, t)["paths"];
    j["pairs"] = mu.pairs.size();
    j["corrections"] = mu.corrections;
    r.json = j.dump(2);
  });
}

jg_status jg_render(jg_scenario* s, const char* traces_json, const char* plan_json, jg_result** out) {
  return guarded(out, [&](jg_result& r) {
    need(s, "scenario");
    Traces t;
    if (traces_json && *traces_json) t = traces_from_json(parse_json(traces_json), s->c, s->d);
    RenderPlan plan;
    if (plan_json && *plan_json) {
      json p = parse_json(plan_json);
      std::string layout = p.value("layout", std::string("auto"));
      if (layout == "auto") plan.layout = RenderPlan::Layout::automatic;
      else if (layout == "native") plan.layout = RenderPlan::Layout::native;
      else if (layout == "row") plan.layout = RenderPlan::Layout::row;
      else fail(ErrorKind::domain, "unknown layout " + layout);
      plan.cells = p.value("cells", std::vector<int>{});
      plan.scale = p.value("scale", plan.scale);
      plan.labels = p.value("labels", plan.labels);
      if (!(plan.scale > 0)) fail(ErrorKind::domain, "scale must be positive");
    }
    r.text = render_svg(s->c, s->d, t, plan);
    r.json = json{{"svg", r.text}}.dump();
  });
}

}  // extern "C"
