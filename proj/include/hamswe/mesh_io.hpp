//
//  hamswe: Hamiltonian finite-volume shallow water schemes on dual meshes.
//
//  Copyright 2026 The hamswe Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hamswe/error.hpp"
#include "hamswe/mesh.hpp"

namespace hamswe {

// Text mesh format. Each section starts with a `#NAME` line and holds one
// record per element, in index order; fields are separated by spaces.
//
//   #META      key value lines: cells boundary_cells vertices edges
//              boundary_edges periodic period_x period_y
//   #CELLS     x y area on_boundary
//   #VERTICES  x y area
//   #EDGES     nx ny tx ty l d A on_boundary
//   #EC        count, then (edge sign) pairs            one line per cell
//   #VC        count, then vertex indices               one line per cell
//   #CE        count, then (cell sign) pairs            one line per edge
//   #VE        count, then (vertex sign) pairs          one line per edge
//   #CV        count, then cell indices                 one line per vertex
//   #EV        count, then (edge sign) pairs            one line per vertex
//   #KITES     cell vertex area                         one line per kite
//
// Indices are 0-based. Reals are written with 17 significant digits, which
// round-trips doubles exactly.

namespace detail {

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class LineReader {
 public:
  LineReader(std::vector<std::string_view> tokens, std::size_t line)
      : tokens_(std::move(tokens)), line_(line) {}

  std::size_t line() const { return line_; }
  bool done() const { return pos_ == tokens_.size(); }

  double real() {
    const std::string_view t = next();
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
      throw ParseError("expected a real number, got '" + std::string(t) + "'",
                       line_);
    return v;
  }
  long integer() {
    const std::string_view t = next();
    long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size())
      throw ParseError("expected an integer, got '" + std::string(t) + "'",
                       line_);
    return v;
  }
  std::size_t index(std::size_t bound, const char* what) {
    const long v = integer();
    if (v < 0 || static_cast<std::size_t>(v) >= bound)
      throw ParseError(std::string("dangling ") + what + " index " +
                           std::to_string(v) + " (have " +
                           std::to_string(bound) + ")",
                       line_);
    return static_cast<std::size_t>(v);
  }
  int sign() {
    const long v = integer();
    if (v != 1 && v != -1)
      throw ParseError("orientation indicator must be 1 or -1", line_);
    return static_cast<int>(v);
  }
  bool flag() {
    const long v = integer();
    if (v != 0 && v != 1) throw ParseError("flag must be 0 or 1", line_);
    return v == 1;
  }
  void finish() {
    if (!done()) throw ParseError("trailing fields on record", line_);
  }

 private:
  std::string_view next() {
    if (done()) throw ParseError("record has too few fields", line_);
    return tokens_[pos_++];
  }
  std::vector<std::string_view> tokens_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Section {
  std::size_t header_line = 0;
  std::vector<std::pair<std::size_t, std::string>> records;  // (line, text)
};

inline std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t' || s[k] == '\r')) ++k;
    const std::size_t start = k;
    while (k < s.size() && s[k] != ' ' && s[k] != '\t' && s[k] != '\r') ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

}  // namespace detail

inline void write_mesh(const DualMesh& m, std::ostream& os) {
  using detail::format_real;
  os << "#META\n"
     << "cells " << m.n_cells() << "\n"
     << "boundary_cells " << m.n_boundary_cells() << "\n"
     << "vertices " << m.n_vertices() << "\n"
     << "edges " << m.n_edges() << "\n"
     << "boundary_edges " << m.n_boundary_edges() << "\n"
     << "periodic " << (m.periodic ? 1 : 0) << "\n"
     << "period_x " << format_real(m.period_x) << "\n"
     << "period_y " << format_real(m.period_y) << "\n";
  os << "#CELLS\n";
  for (std::size_t i = 0; i < m.n_cells(); ++i)
    os << format_real(m.cell_center[i].x) << ' '
       << format_real(m.cell_center[i].y) << ' ' << format_real(m.cell_area[i])
       << ' ' << int(m.cell_on_boundary[i]) << '\n';
  os << "#VERTICES\n";
  for (std::size_t v = 0; v < m.n_vertices(); ++v)
    os << format_real(m.vertex_position[v].x) << ' '
       << format_real(m.vertex_position[v].y) << ' '
       << format_real(m.vertex_area[v]) << '\n';
  os << "#EDGES\n";
  for (std::size_t e = 0; e < m.n_edges(); ++e)
    os << format_real(m.edge_normal[e].x) << ' '
       << format_real(m.edge_normal[e].y) << ' '
       << format_real(m.edge_tangent[e].x) << ' '
       << format_real(m.edge_tangent[e].y) << ' '
       << format_real(m.primal_length[e]) << ' '
       << format_real(m.dual_length[e]) << ' '
       << format_real(m.diamond_area[e]) << ' ' << int(m.edge_on_boundary[e])
       << '\n';
  auto signed_lists = [&](const char* name, const auto& lists) {
    os << name << '\n';
    for (const auto& list : lists) {
      os << list.size();
      for (const Incidence& x : list) os << ' ' << x.index << ' ' << x.sign;
      os << '\n';
    }
  };
  auto kite_lists = [&](const char* name, const auto& lists) {
    os << name << '\n';
    for (const auto& list : lists) {
      os << list.size();
      for (const Kite& k : list) os << ' ' << k.index;
      os << '\n';
    }
  };
  signed_lists("#EC", m.edges_of_cell);
  kite_lists("#VC", m.vertices_of_cell);
  signed_lists("#CE", m.cells_of_edge);
  signed_lists("#VE", m.vertices_of_edge);
  kite_lists("#CV", m.cells_of_vertex);
  signed_lists("#EV", m.edges_of_vertex);
  os << "#KITES\n";
  for (std::size_t i = 0; i < m.n_cells(); ++i)
    for (const Kite& k : m.vertices_of_cell[i])
      os << i << ' ' << k.index << ' ' << format_real(k.area) << '\n';
}

inline void save_mesh(const DualMesh& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_mesh(m, os);
  if (!os) throw Error("failed writing '" + path + "'");
}

inline DualMesh read_mesh(std::istream& is) {
  using detail::LineReader;
  std::map<std::string, detail::Section> sections;
  detail::Section* current = nullptr;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::split(line).empty()) continue;
    if (line[0] == '#') {
      const std::string name = std::string(detail::split(line)[0]);
      if (sections.count(name))
        throw ParseError("duplicate section " + name, lineno);
      current = &sections[name];
      current->header_line = lineno;
      continue;
    }
    if (!current) throw ParseError("record before the first section", lineno);
    current->records.emplace_back(lineno, line);
  }
  const std::size_t eof_line = lineno + 1;

  auto section = [&](const std::string& name) -> const detail::Section& {
    auto it = sections.find(name);
    if (it == sections.end())
      throw ParseError("missing section " + name, eof_line);
    return it->second;
  };
  const std::vector<std::string> known = {"#META", "#CELLS", "#VERTICES",
                                          "#EDGES", "#EC", "#VC", "#CE",
                                          "#VE", "#CV", "#EV", "#KITES"};
  for (const auto& [name, sec] : sections)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ParseError("unknown section " + name, sec.header_line);
  for (const auto& name : known) section(name);

  std::map<std::string, std::pair<std::string, std::size_t>> meta;
  for (const auto& [ln, text] : section("#META").records) {
    auto tok = detail::split(text);
    if (tok.size() != 2) throw ParseError("#META records are 'key value'", ln);
    meta[std::string(tok[0])] = {std::string(tok[1]), ln};
  }
  auto meta_reader = [&](const std::string& key) {
    auto it = meta.find(key);
    if (it == meta.end())
      throw ParseError("#META lacks key '" + key + "'",
                       section("#META").header_line);
    return std::make_pair(it->second.first, it->second.second);
  };
  auto meta_count = [&](const std::string& key) {
    auto [val, ln] = meta_reader(key);
    LineReader r({val}, ln);
    const long v = r.integer();
    if (v < 0) throw ParseError("negative count for '" + key + "'", ln);
    return static_cast<std::size_t>(v);
  };
  auto meta_real = [&](const std::string& key) {
    auto [val, ln] = meta_reader(key);
    LineReader r({val}, ln);
    return r.real();
  };

  const std::size_t nc = meta_count("cells");
  const std::size_t ncb = meta_count("boundary_cells");
  const std::size_t nv = meta_count("vertices");
  const std::size_t ne = meta_count("edges");
  const std::size_t neb = meta_count("boundary_edges");

  DualMesh m;
  {
    auto [val, ln] = meta_reader("periodic");
    LineReader r({val}, ln);
    m.periodic = r.flag();
  }
  m.period_x = meta_real("period_x");
  m.period_y = meta_real("period_y");

  auto records = [&](const std::string& name, std::size_t want) {
    const auto& sec = section(name);
    if (sec.records.size() != want)
      throw ParseError(name + " has " + std::to_string(sec.records.size()) +
                           " records, #META says " + std::to_string(want),
                       sec.records.empty() ? sec.header_line
                                           : sec.records.back().first);
    std::vector<LineReader> out;
    for (const auto& [ln, text] : sec.records)
      out.emplace_back(detail::split(text), ln);
    return out;
  };

  for (auto& r : records("#CELLS", nc)) {
    const double x = r.real(), y = r.real();
    m.cell_center.push_back({x, y});
    m.cell_area.push_back(r.real());
    m.cell_on_boundary.push_back(r.flag());
    r.finish();
  }
  if (m.n_boundary_cells() != ncb)
    throw ParseError("boundary cell count disagrees with #META",
                     section("#CELLS").header_line);
  for (auto& r : records("#VERTICES", nv)) {
    const double x = r.real(), y = r.real();
    m.vertex_position.push_back({x, y});
    m.vertex_area.push_back(r.real());
    r.finish();
  }
  for (auto& r : records("#EDGES", ne)) {
    const double nx = r.real(), ny = r.real();
    const double tx = r.real(), ty = r.real();
    m.edge_normal.push_back({nx, ny});
    m.edge_tangent.push_back({tx, ty});
    m.primal_length.push_back(r.real());
    m.dual_length.push_back(r.real());
    m.diamond_area.push_back(r.real());
    m.edge_on_boundary.push_back(r.flag());
    r.finish();
  }
  if (m.n_boundary_edges() != neb)
    throw ParseError("boundary edge count disagrees with #META",
                     section("#EDGES").header_line);

  auto signed_lists = [&](const std::string& name, std::size_t rows,
                          std::size_t bound, const char* what) {
    std::vector<std::vector<Incidence>> out;
    for (auto& r : records(name, rows)) {
      const long count = r.integer();
      if (count < 0) throw ParseError("negative list length", r.line());
      std::vector<Incidence> list;
      for (long k = 0; k < count; ++k) {
        const std::size_t idx = r.index(bound, what);
        list.push_back({idx, r.sign()});
      }
      r.finish();
      out.push_back(std::move(list));
    }
    return out;
  };
  auto index_lists = [&](const std::string& name, std::size_t rows,
                         std::size_t bound, const char* what) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
    for (auto& r : records(name, rows)) {
      const long count = r.integer();
      if (count < 0) throw ParseError("negative list length", r.line());
      std::vector<std::pair<std::size_t, std::size_t>> list;
      for (long k = 0; k < count; ++k)
        list.emplace_back(r.index(bound, what), r.line());
      r.finish();
      out.push_back(std::move(list));
    }
    return out;
  };

  m.edges_of_cell = signed_lists("#EC", nc, ne, "edge");
  const auto vc = index_lists("#VC", nc, nv, "vertex");
  m.cells_of_edge = signed_lists("#CE", ne, nc, "cell");
  m.vertices_of_edge = signed_lists("#VE", ne, nv, "vertex");
  const auto cv = index_lists("#CV", nv, nc, "cell");
  m.edges_of_vertex = signed_lists("#EV", nv, ne, "edge");

  std::map<std::pair<std::size_t, std::size_t>, double> kites;
  for (const auto& [ln, text] : section("#KITES").records) {
    LineReader r(detail::split(text), ln);
    const std::size_t i = r.index(nc, "cell");
    const std::size_t v = r.index(nv, "vertex");
    const double a = r.real();
    r.finish();
    if (!kites.emplace(std::make_pair(i, v), a).second)
      throw ParseError("duplicate kite", ln);
  }
  auto kite = [&](std::size_t i, std::size_t v, std::size_t ln) {
    auto it = kites.find({i, v});
    if (it == kites.end())
      throw ParseError("#KITES has no area for cell " + std::to_string(i) +
                           " and vertex " + std::to_string(v),
                       ln);
    return it->second;
  };
  m.vertices_of_cell.resize(nc);
  for (std::size_t i = 0; i < nc; ++i)
    for (auto [v, ln] : vc[i]) m.vertices_of_cell[i].push_back({v, kite(i, v, ln)});
  m.cells_of_vertex.resize(nv);
  for (std::size_t v = 0; v < nv; ++v)
    for (auto [i, ln] : cv[v]) m.cells_of_vertex[v].push_back({i, kite(i, v, ln)});
  return m;
}

inline DualMesh load_mesh(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(is);
}

}  // namespace hamswe
