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

#include <array>
#include <map>

#include "jagged/complex.hpp"
#include "jagged/error.hpp"
#include "jagged/json_util.hpp"

namespace jag {

using nlohmann::json;

namespace {

AffineMap read_map(const json& j, int dim) {
  AffineMap m;
  m.dim = dim;
  m.m.clear();
  const json& mat = j.at("matrix");
  if (!mat.is_array() || static_cast<int>(mat.size()) != dim)
    fail(ErrorKind::parse, "gluing matrix has the wrong shape");
  for (const auto& row : mat) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(ErrorKind::parse, "gluing matrix has the wrong shape");
    for (const auto& x : row) m.m.push_back(json_int(x));
  }
  m.t.assign(dim, 0);
  if (j.contains("translation")) {
    const json& t = j.at("translation");
    if (!t.is_array() || static_cast<int>(t.size()) != dim)
      fail(ErrorKind::parse, "gluing translation has the wrong shape");
    for (int i = 0; i < dim; ++i) m.t[i] = json_int(t[i]);
  }
  return m;
}

AffineFn read_fn(const json& j, int dim) {
  AffineFn f;
  for (const auto& x : j.at("slope")) f.slope.push_back(json_rational(x));
  if (static_cast<int>(f.slope.size()) != dim) fail(ErrorKind::parse, "affine function slope has the wrong rank");
  f.constant = j.contains("constant") ? json_rational(j.at("constant")) : Rational(0);
  return f;
}

std::vector<Transition> read_branches(const json& g, int dim, bool* explicit_twist) {
  std::vector<Transition> out;
  auto one = [&](const json& b) {
    Transition t;
    t.map = read_map(b, dim);
    t.twist = AffineFn::zero(dim);
    if (b.contains("twist")) {
      t.twist = read_fn(b.at("twist"), dim);
      *explicit_twist = true;
    } else if (g.contains("twist")) {
      t.twist = read_fn(g.at("twist"), dim);
      *explicit_twist = true;
    }
    out.push_back(t);
  };
  if (g.contains("branches")) {
    for (const auto& b : g.at("branches")) one(b);
  } else {
    one(g);
  }
  return out;
}

}  // namespace

Point json_point(const json& j, int dim) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::parse, "point must be [cell, [coords]]");
  Point p;
  p.cell = static_cast<int>(json_int(j[0]));
  for (const auto& x : j[1]) p.x.push_back(json_rational(x));
  if (static_cast<int>(p.x.size()) != dim) fail(ErrorKind::parse, "point has the wrong dimension");
  return p;
}

ChartComplex complex_from_json(const std::string& text, ValidationReport* report) {
  json doc = parse_json(text);
  return complex_from_json(doc, report);
}

ChartComplex complex_from_json(const json& doc, ValidationReport* report) {
  ChartComplex c;
  try {
    c.name = doc.value("name", std::string("scenario"));
    c.dim = static_cast<int>(doc.value("dimension", 2));
    std::map<std::int64_t, int> index;
    for (const auto& cell : doc.at("cells")) {
      Cell k;
      k.id = static_cast<int>(json_int(cell.at("id")));
      for (const auto& v : cell.at("vertices")) {
        Coords x;
        for (const auto& a : v) x.push_back(json_rational(a));
        k.vertices.push_back(x);
      }
      if (index.count(k.id)) fail(ErrorKind::parse, "duplicate cell id " + std::to_string(k.id));
      index[k.id] = static_cast<int>(c.cells.size());
      c.cells.push_back(k);
    }
    auto cell_index = [&](const json& j) {
      auto it = index.find(json_int(j));
      if (it == index.end()) fail(ErrorKind::parse, "unknown cell id " + j.dump());
      return it->second;
    };

    // A gluing may be listed once, or once per direction.
    std::map<std::array<int, 4>, std::size_t> seen;
    std::vector<std::vector<Transition>> reverse_maps;
    if (doc.contains("gluings")) {
      for (const auto& g : doc.at("gluings")) {
        const json& e = g.at("edge");
        if (!e.is_array() || e.size() != 4) fail(ErrorKind::parse, "gluing edge must be [cellA, edgeA, cellB, edgeB]");
        std::array<int, 4> key{cell_index(e[0]), static_cast<int>(json_int(e[1])), cell_index(e[2]),
                               static_cast<int>(json_int(e[3]))};
        bool explicit_twist = false;
        auto branches = read_branches(g, c.dim, &explicit_twist);
        std::array<int, 4> rev{key[2], key[3], key[0], key[1]};
        auto it = seen.find(rev);
        if (it != seen.end()) {
          reverse_maps[it->second] = branches;
          continue;
        }
        Gluing gl;
        gl.a = {key[0], key[1]};
        gl.b = {key[2], key[3]};
        gl.forward = branches;
        gl.explicit_twist = explicit_twist;
        seen[key] = c.gluings.size();
        c.gluings.push_back(gl);
        reverse_maps.emplace_back();
      }
    }
    for (std::size_t i = 0; i < c.gluings.size(); ++i) {
      auto& g = c.gluings[i];
      if (!reverse_maps[i].empty()) {
        g.backward = reverse_maps[i];
      } else {
        std::size_t nb = g.forward.size();
        g.backward.resize(nb);
        for (std::size_t k = 0; k < nb; ++k) {
          if (g.forward[k].map.det() != 1 && g.forward[k].map.det() != -1) break;
          g.backward[nb - 1 - k] = g.forward[k].inverse();
        }
      }
    }

    if (doc.contains("singular_points")) {
      for (const auto& s : doc.at("singular_points")) {
        const json& e = s.at("edge");
        int cell = cell_index(e.at(0));
        int edge = static_cast<int>(json_int(e.at(1)));
        Rational pos = json_rational(s.at("position"));
        bool found = false;
        for (auto& g : c.gluings) {
          if (g.a.cell == cell && g.a.edge == edge) {
            g.split = pos;
            found = true;
          } else if (g.b.cell == cell && g.b.edge == edge) {
            g.split = 1 - pos;
            found = true;
          }
        }
        if (!found) fail(ErrorKind::parse, "singular point on an edge without gluing");
      }
    }

    c.has_phi = doc.contains("phi");
    if (c.has_phi) {
      c.phi.assign(c.cells.size(), AffineFn::zero(c.dim));
      std::vector<bool> given(c.cells.size(), false);
      for (const auto& p : doc.at("phi")) {
        int k = cell_index(p.at("cell"));
        c.phi[k] = read_fn(p, c.dim);
        given[k] = true;
      }
      for (bool g : given)
        if (!g) fail(ErrorKind::parse, "phi missing on some cell");
    }

    if (doc.contains("labels")) {
      for (const auto& [name, val] : doc.at("labels").items()) {
        Point p = json_point(val, c.dim);
        p.cell = cell_index(val[0]);
        c.labels[name] = p;
        c.label_order.push_back(name);
      }
    }
    if (doc.contains("label_order")) {
      c.label_order.clear();
      for (const auto& n : doc.at("label_order")) c.label_order.push_back(n.get<std::string>());
    }
    if (doc.contains("singular_vertices")) {
      for (const auto& v : doc.at("singular_vertices")) {
        Point p = json_point(v, c.dim);
        p.cell = cell_index(v[0]);
        c.singular_vertices.push_back(p);
      }
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("scenario: ") + e.what());
  }
  c.finalize(report);
  return c;
}

}  // namespace jag
