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

#include "jagged/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "jagged/error.hpp"
#include "jagged/json_util.hpp"

namespace jag {

using nlohmann::json;

namespace {

json coords_json(const Coords& x) {
  json out = json::array();
  for (const auto& a : x) out.push_back(to_string(a));
  return out;
}

Coords json_coords(const json& j) {
  Coords x;
  for (const auto& a : j) x.push_back(json_rational(a));
  return x;
}

json exponent_json(const Exponent& e) { return json(e); }

Exponent json_exponent(const json& j) {
  Exponent e;
  for (const auto& a : j) e.push_back(json_int(a));
  return e;
}

}  // namespace

json traces_to_json(const Structure& d, const Traces& t) {
  json paths = json::array();
  for (const auto& p : t.paths) {
    json segs = json::array(), bends = json::array();
    for (const auto& s : p.path.segments)
      segs.push_back({{"cell", s.cell}, {"a", coords_json(s.a)}, {"b", coords_json(s.b)},
                      {"q", exponent_json(s.q)}, {"coeff", to_string(s.coeff)}});
    for (const auto& b : p.path.bends) {
      if (b.ray < 0 || b.ray >= static_cast<int>(d.rays.size())) fail(ErrorKind::render, "bend on unknown ray");
      bends.push_back({{"ray", d.rays[b.ray].name}, {"segment", b.segment},
                       {"increment", exponent_json(b.increment)}, {"coeff", to_string(b.coeff)}});
    }
    paths.push_back({{"name", p.name}, {"length", p.path.length}, {"segments", segs}, {"bends", bends}});
  }
  json trees = json::array();
  for (const auto& tr : t.trees) {
    json edges = json::array();
    for (const auto& e : tr.edges)
      edges.push_back({{"name", edge_name(e.i, e.j)}, {"i", e.i}, {"j", e.j}, {"level", e.level},
                       {"from", coords_json(e.from)}, {"to", coords_json(e.to)},
                       {"monomial", exponent_json(e.monomial)}});
    trees.push_back({{"tree", tr.tree.to_string()}, {"output", coords_json(tr.output)}, {"ord", tr.ord},
                     {"coeff", to_string(tr.coeff)}, {"edges", edges}});
  }
  return {{"paths", paths}, {"trees", trees}};
}

namespace {

// Rebuilds the ribbon tree from its edge intervals.
RibbonTree tree_from_edges(const std::vector<TmtEdge>& edges) {
  RibbonTree t;
  for (const auto& e : edges) t.d = std::max(t.d, e.j);
  for (const auto& e : edges) t.nodes.push_back({e.i, e.j, -1, {}});
  for (std::size_t n = 0; n < t.nodes.size(); ++n) {
    int best = -1;
    for (std::size_t m = 0; m < t.nodes.size(); ++m) {
      const auto &a = t.nodes[n], &b = t.nodes[m];
      if (m == n || b.lo > a.lo || b.hi < a.hi || (b.lo == a.lo && b.hi == a.hi)) continue;
      if (best < 0 || b.hi - b.lo < t.nodes[best].hi - t.nodes[best].lo) best = static_cast<int>(m);
    }
    t.nodes[n].parent = best;
  }
  for (std::size_t n = 0; n < t.nodes.size(); ++n)
    if (t.nodes[n].parent >= 0) t.nodes[t.nodes[n].parent].children.push_back(static_cast<int>(n));
  for (auto& node : t.nodes)
    std::sort(node.children.begin(), node.children.end(),
              [&](int a, int b) { return t.nodes[a].lo < t.nodes[b].lo; });
  if (t.nodes.empty() || t.nodes[0].parent != -1) fail(ErrorKind::render, "tree trace must list e_{0,d} first");
  return t;
}

}  // namespace

Traces traces_from_json(const json& doc, const ChartComplex& c, const Structure& d) {
  Traces t;
  try {
    for (const auto& p : doc.value("paths", json::array())) {
      PathTrace tr;
      tr.name = p.value("name", std::string());
      tr.path.length = p.value("length", 0);
      for (const auto& s : p.at("segments"))
        tr.path.segments.push_back({static_cast<int>(json_int(s.at("cell"))), json_coords(s.at("a")),
                                    json_coords(s.at("b")), json_exponent(s.value("q", json::array())),
                                    s.contains("coeff") ? json_rational(s["coeff"]) : Rational(1)});
      for (const auto& b : p.value("bends", json::array())) {
        PathBend bend;
        std::string name = b.at("ray").get<std::string>();
        bend.ray = d.find(name);
        if (bend.ray < 0) fail(ErrorKind::render, "trace '" + tr.name + "' bends on unknown ray '" + name + "'");
        bend.segment = static_cast<int>(json_int(b.at("segment")));
        bend.increment = json_exponent(b.value("increment", json::array()));
        bend.coeff = b.contains("coeff") ? json_rational(b["coeff"]) : Rational(1);
        tr.path.bends.push_back(bend);
      }
      t.paths.push_back(std::move(tr));
    }
    for (const auto& j : doc.value("trees", json::array())) {
      TropicalMorseTree tr;
      for (const auto& e : j.at("edges")) {
        TmtEdge edge;
        edge.i = static_cast<int>(json_int(e.at("i")));
        edge.j = static_cast<int>(json_int(e.at("j")));
        edge.level = json_int(e.value("level", json(0)));
        edge.from = json_coords(e.at("from"));
        edge.to = json_coords(e.at("to"));
        edge.monomial = json_exponent(e.value("monomial", json::array()));
        tr.edges.push_back(std::move(edge));
      }
      tr.tree = tree_from_edges(tr.edges);
      tr.output = json_coords(j.value("output", json::array()));
      tr.ord = json_int(j.value("ord", json(0)));
      tr.coeff = j.contains("coeff") ? json_rational(j["coeff"]) : Rational(1);
      t.trees.push_back(std::move(tr));
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("malformed trace document: ") + e.what());
  }
  (void)c;
  return t;
}

namespace {

Vec2 as_vec(const Coords& x) { return x.size() == 1 ? Vec2(x[0], 0) : Vec2(x); }

// Interiors of two convex polygons (ccw) are disjoint iff an edge of one
// separates them.
bool separated(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
  auto one_way = [](const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      Vec2 u = a[i], v = a[(i + 1) % a.size()];
      bool all_out = true;
      for (const auto& w : b) all_out &= cross(v - u, w - u) <= 0;
      if (all_out) return true;
    }
    return false;
  };
  return one_way(p, q) || one_way(q, p);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

class Canvas {
 public:
  explicit Canvas(const RenderPlan& plan) : plan_(plan) {}

  std::vector<int> cells;
  std::map<int, Vec2> offset;

  Vec2 place(int cell, const Coords& x) const { return as_vec(x) + offset.at(cell); }
  void grow(const Vec2& p) {
    if (!any_) lo_ = hi_ = p, any_ = true;
    lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
    hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
  }
  double sx(const Vec2& p) const { return plan_.margin + Rational(p.x - lo_.x).get_d() * plan_.scale; }
  double sy(const Vec2& p) const { return plan_.margin + Rational(hi_.y - p.y).get_d() * plan_.scale; }
  std::string xy(const Vec2& p) const { return num(sx(p)) + "," + num(sy(p)); }
  double width() const { return 2 * plan_.margin + Rational(hi_.x - lo_.x).get_d() * plan_.scale; }
  double height() const { return 2 * plan_.margin + Rational(hi_.y - lo_.y).get_d() * plan_.scale; }

 private:
  const RenderPlan& plan_;
  bool any_ = false;
  Vec2 lo_, hi_;
};

void layout(const ChartComplex& c, const RenderPlan& plan, Canvas& cv) {
  if (plan.cells.empty()) {
    for (std::size_t i = 0; i < c.cells.size(); ++i) cv.cells.push_back(static_cast<int>(i));
  } else {
    std::set<int> seen;
    for (int i : plan.cells) {
      if (i < 0 || i >= static_cast<int>(c.cells.size())) fail(ErrorKind::render, "plan names missing cell " + std::to_string(i));
      if (seen.insert(i).second) cv.cells.push_back(i);
    }
  }
  auto shape = [&](int i) {
    std::vector<Vec2> v;
    for (const auto& x : c.cells[i].vertices) v.push_back(as_vec(x));
    return v;
  };
  bool row = plan.layout == RenderPlan::Layout::row;
  if (plan.layout == RenderPlan::Layout::automatic)
    for (std::size_t a = 0; a < cv.cells.size() && !row; ++a)
      for (std::size_t b = a + 1; b < cv.cells.size() && !row; ++b) {
        auto p = shape(cv.cells[a]), q = shape(cv.cells[b]);
        if (c.dim == 1) {
          row = std::max(p[0].x, q[0].x) < std::min(p[1].x, q[1].x);
        } else {
          row = !separated(p, q);
        }
      }
  Rational cursor = 0;
  for (int i : cv.cells) {
    if (!row) {
      cv.offset[i] = Vec2(0, 0);
      continue;
    }
    auto v = shape(i);
    Rational lo = v[0].x, hi = v[0].x;
    for (const auto& p : v) lo = std::min(lo, p.x), hi = std::max(hi, p.x);
    cv.offset[i] = Vec2(cursor - lo, 0);
    cursor += hi - lo + make_rational(1, 2);
  }
}

}  // namespace

std::string render_svg(const ChartComplex& c, const Structure& d, const Traces& traces, const RenderPlan& plan) {
  if (plan.palette.empty()) fail(ErrorKind::render, "empty palette");
  Canvas cv(plan);
  layout(c, plan, cv);
  auto drawn = [&](int cell) { return cv.offset.count(cell) > 0; };

  // Reference checks come first so that nothing is emitted for a bad trace.
  for (const auto& p : traces.paths) {
    if (p.path.segments.empty()) fail(ErrorKind::render, "trace '" + p.name + "' has no segments");
    for (const auto& s : p.path.segments) {
      if (s.cell < 0 || s.cell >= static_cast<int>(c.cells.size()))
        fail(ErrorKind::render, "trace '" + p.name + "' refers to missing cell " + std::to_string(s.cell));
      if (!drawn(s.cell)) fail(ErrorKind::render, "trace '" + p.name + "' enters undrawn cell " + std::to_string(s.cell));
      if (static_cast<int>(s.a.size()) != c.dim || static_cast<int>(s.b.size()) != c.dim)
        fail(ErrorKind::render, "trace '" + p.name + "' has points of the wrong dimension");
    }
    for (const auto& b : p.path.bends) {
      if (b.ray < 0 || b.ray >= static_cast<int>(d.rays.size()))
        fail(ErrorKind::render, "trace '" + p.name + "' bends on a missing ray");
      if (b.segment < 0 || b.segment >= static_cast<int>(p.path.segments.size()))
        fail(ErrorKind::render, "trace '" + p.name + "' bends at a missing segment");
    }
  }
  if (!traces.trees.empty() && c.dim != 1) fail(ErrorKind::render, "tree traces need a one-dimensional scenario");

  for (int i : cv.cells)
    for (const auto& v : c.cells[i].vertices) cv.grow(cv.place(i, v));
  // Trees hang below the axis, one row per depth.
  const Rational row_step = make_rational(1, 4);
  std::vector<std::vector<int>> depth(traces.trees.size());
  Rational tree_base = 0;
  for (std::size_t t = 0; t < traces.trees.size(); ++t) {
    const auto& tr = traces.trees[t];
    depth[t].assign(tr.tree.nodes.size(), 0);
    int deepest = 0;
    for (std::size_t n = 1; n < tr.tree.nodes.size(); ++n) {
      int p = tr.tree.nodes[n].parent;
      depth[t][n] = (p >= 0 ? depth[t][p] : 0) + 1;
      deepest = std::max(deepest, depth[t][n]);
    }
    tree_base -= row_step * (deepest + 2);
    for (const auto& e : tr.edges) {
      cv.grow(Vec2(e.from[0], tree_base));
      cv.grow(Vec2(e.to[0], tree_base));
    }
  }

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(cv.width()) << "\" height=\""
    << num(cv.height()) << "\" viewBox=\"0 0 " << num(cv.width()) << " " << num(cv.height()) << "\">\n";
  o << "<title>" << escape(c.name) << "</title>\n";

  o << "<g id=\"cells\">\n";
  for (int i : cv.cells) {
    if (c.dim == 1) {
      const auto& v = c.cells[i].vertices;
      o << "  <line class=\"cell\" data-cell=\"" << i << "\" x1=\"" << num(cv.sx(cv.place(i, v[0]))) << "\" y1=\""
        << num(cv.sy(cv.place(i, v[0]))) << "\" x2=\"" << num(cv.sx(cv.place(i, v[1]))) << "\" y2=\""
        << num(cv.sy(cv.place(i, v[1]))) << "\" stroke=\"#bbbbbb\" stroke-width=\"6\"/>\n";
      continue;
    }
    o << "  <polygon class=\"cell\" data-cell=\"" << i << "\" points=\"";
    const auto& v = c.cells[i].vertices;
    for (std::size_t k = 0; k < v.size(); ++k) o << (k ? " " : "") << cv.xy(cv.place(i, v[k]));
    o << "\" fill=\"" << plan.cell_fill << "\" stroke=\"none\"/>\n";
  }
  o << "</g>\n";

  o << "<g id=\"edges\">\n";
  for (int i : cv.cells) {
    for (int e = 0; e < c.num_edges(i); ++e) {
      auto [a, b] = c.edge_endpoints(i, e);
      Vec2 pa = cv.place(i, a), pb = cv.place(i, b);
      auto [g, is_a] = c.gluing_of(i, e);
      std::string kind = "boundary";
      if (g >= 0) {
        const auto& other = is_a ? c.gluings[g].b : c.gluings[g].a;
        kind = "cut";
        if (drawn(other.cell)) {
          auto [oa, ob] = c.edge_endpoints(other.cell, other.edge);
          Vec2 qa = cv.place(other.cell, oa), qb = cv.place(other.cell, ob);
          if ((qa == pa && qb == pb) || (qa == pb && qb == pa)) {
            if (!is_a) continue;  // drawn once, from side a
            kind = "interior";
          }
        }
      }
      if (c.dim == 1) {
        Vec2 up = pa + Vec2(0, make_rational(1, 16)), down = pa - Vec2(0, make_rational(1, 16));
        o << "  <line class=\"edge " << kind << "\" x1=\"" << num(cv.sx(up)) << "\" y1=\"" << num(cv.sy(up))
          << "\" x2=\"" << num(cv.sx(down)) << "\" y2=\"" << num(cv.sy(down)) << "\" stroke=\"#333333\"/>\n";
        continue;
      }
      o << "  <line class=\"edge " << kind << "\" data-cell=\"" << i << "\" data-edge=\"" << e << "\" x1=\""
        << num(cv.sx(pa)) << "\" y1=\"" << num(cv.sy(pa)) << "\" x2=\"" << num(cv.sx(pb)) << "\" y2=\""
        << num(cv.sy(pb)) << "\" stroke=\"#333333\" stroke-width=\"" << (kind == "interior" ? "1" : "2") << "\""
        << (kind == "cut" ? " stroke-dasharray=\"6,3\"" : "") << "/>\n";
    }
  }
  auto singular_mark = [&](const Vec2& p) {
    double x = cv.sx(p), y = cv.sy(p), r = 5;
    o << "  <path class=\"singular\" d=\"M" << num(x - r) << "," << num(y - r) << " L" << num(x + r) << ","
      << num(y + r) << " M" << num(x - r) << "," << num(y + r) << " L" << num(x + r) << "," << num(y - r)
      << "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  };
  for (const auto& g : c.gluings) {
    if (!g.split) continue;
    for (const EdgeRef& side : {g.a, g.b}) {
      if (!drawn(side.cell)) continue;
      auto [a, b] = c.edge_endpoints(side.cell, side.edge);
      Rational s = side == g.a ? *g.split : 1 - *g.split;
      Vec2 pa = cv.place(side.cell, a), pb = cv.place(side.cell, b);
      singular_mark(pa + (pb - pa) * s);
      if (drawn(g.a.cell) && drawn(g.b.cell)) {
        auto [oa, ob] = c.edge_endpoints(g.a.cell, g.a.edge);
        auto [qa, qb] = c.edge_endpoints(g.b.cell, g.b.edge);
        Vec2 x = cv.place(g.a.cell, oa), y = cv.place(g.a.cell, ob);
        Vec2 u = cv.place(g.b.cell, qa), v = cv.place(g.b.cell, qb);
        if ((x == u && y == v) || (x == v && y == u)) break;  // coincident sides share one mark
      }
    }
  }
  for (const auto& p : c.singular_vertices)
    if (drawn(p.cell)) singular_mark(cv.place(p.cell, p.x));
  o << "</g>\n";

  o << "<g id=\"rays\">\n";
  for (const auto& piece : d.pieces()) {
    if (!drawn(piece.cell)) continue;
    const Ray& r = d.rays[piece.ray];
    Vec2 a = cv.place(piece.cell, piece.a.coords()), b = cv.place(piece.cell, piece.b.coords());
    o << "  <line class=\"ray\" data-ray=\"" << escape(r.name) << "\" x1=\"" << num(cv.sx(a)) << "\" y1=\""
      << num(cv.sy(a)) << "\" x2=\"" << num(cv.sx(b)) << "\" y2=\"" << num(cv.sy(b)) << "\" stroke=\""
      << plan.ray_color << "\" stroke-width=\"1.5\"" << (r.bounded ? " stroke-dasharray=\"4,3\"" : "") << "/>\n";
  }
  o << "</g>\n";

  o << "<g id=\"paths\">\n";
  for (const auto& p : traces.paths) {
    std::size_t nb = p.path.bends.size();
    const std::string& color = plan.palette[std::min(nb, plan.palette.size() - 1)];
    o << "  <g class=\"path\" data-name=\"" << escape(p.name) << "\" data-bends=\"" << nb << "\">\n";
    // One polyline per run of segments that meet in the drawing.
    std::vector<std::vector<Vec2>> runs;
    for (const auto& s : p.path.segments) {
      Vec2 a = cv.place(s.cell, s.a), b = cv.place(s.cell, s.b);
      if (runs.empty() || runs.back().back() != a) runs.push_back({a});
      runs.back().push_back(b);
    }
    for (const auto& run : runs) {
      o << "    <polyline points=\"";
      for (std::size_t k = 0; k < run.size(); ++k) o << (k ? " " : "") << cv.xy(run[k]);
      o << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    }
    for (const auto& b : p.path.bends) {
      const auto& s = p.path.segments[b.segment];
      Vec2 at = cv.place(s.cell, s.a);
      o << "    <circle class=\"bend\" data-ray=\"" << escape(d.rays[b.ray].name) << "\" cx=\"" << num(cv.sx(at))
        << "\" cy=\"" << num(cv.sy(at)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    }
    o << "  </g>\n";
  }
  o << "</g>\n";

  o << "<g id=\"trees\">\n";
  Rational base = 0;
  for (std::size_t t = 0; t < traces.trees.size(); ++t) {
    const auto& tr = traces.trees[t];
    int deepest = *std::max_element(depth[t].begin(), depth[t].end());
    base -= row_step * (deepest + 2);
    o << "  <g class=\"tree\" data-tree=\"" << escape(tr.tree.to_string()) << "\">\n";
    for (std::size_t n = 0; n < tr.edges.size(); ++n) {
      const auto& e = tr.edges[n];
      Rational y = base + row_step * (deepest - depth[t][n]);
      Vec2 a(e.from[0], y), b(e.to[0], y);
      if (e.contracted()) {
        o << "    <circle class=\"tree-edge contracted\" data-edge=\"" << escape(edge_name(e.i, e.j)) << "\" cx=\""
          << num(cv.sx(a)) << "\" cy=\"" << num(cv.sy(a)) << "\" r=\"3\" fill=\"#d62728\"/>\n";
      } else {
        o << "    <line class=\"tree-edge\" data-edge=\"" << escape(edge_name(e.i, e.j)) << "\" x1=\""
          << num(cv.sx(a)) << "\" y1=\"" << num(cv.sy(a)) << "\" x2=\"" << num(cv.sx(b)) << "\" y2=\""
          << num(cv.sy(b)) << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
      }
    }
    o << "  </g>\n";
  }
  o << "</g>\n";

  o << "<g id=\"labels\">\n";
  if (plan.labels) {
    for (const auto& name : c.label_order) {
      auto p = c.label(name);
      if (!p || !drawn(p->cell)) continue;
      Vec2 at = cv.place(p->cell, p->x);
      o << "  <text x=\"" << num(cv.sx(at) + 4) << "\" y=\"" << num(cv.sy(at) - 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(name) << "</text>\n";
    }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace jag
