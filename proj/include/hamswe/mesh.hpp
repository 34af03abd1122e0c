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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hamswe/error.hpp"

namespace hamswe {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// k × a, the counter-clockwise rotation by 90 degrees.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

/// An index into another element list together with its orientation
/// indicator (n_{e,i} or t_{e,ν}, each ±1).
struct Incidence {
  std::size_t index = 0;
  int sign = 0;
  friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// A (cell, vertex) overlap: the kite spanned by the cell center, the two
/// edge intersection points that neighbor the vertex, and the vertex.
struct Kite {
  std::size_t index = 0;
  double area = 0.0;
  friend bool operator==(const Kite&, const Kite&) = default;
};

/// Orthogonal primal/dual mesh pair.
///
/// Primal cells are indexed by i, dual cells (vertices) by ν, edge pairs by
/// e. For each edge pair the normal n_e is perpendicular to the primal edge,
/// t_e = k × n_e, l_e is the primal edge length (the in-domain part on the
/// boundary), d_e the dual edge length and A_e = l_e d_e / 2 the diamond.
/// On bounded meshes the boundary passes through the centers of boundary
/// cells and boundary dual edges lie on it; cell areas are the in-domain
/// parts. The mesh is immutable once built.
struct DualMesh {
  bool periodic = false;
  double period_x = 0.0;
  double period_y = 0.0;

  std::vector<Vec2> cell_center;
  std::vector<double> cell_area;
  std::vector<std::uint8_t> cell_on_boundary;

  std::vector<Vec2> vertex_position;
  std::vector<double> vertex_area;

  std::vector<Vec2> edge_normal;
  std::vector<Vec2> edge_tangent;
  std::vector<double> primal_length;  // l_e
  std::vector<double> dual_length;    // d_e
  std::vector<double> diamond_area;   // A_e
  std::vector<std::uint8_t> edge_on_boundary;

  std::vector<std::vector<Incidence>> edges_of_cell;     // EC(i), n_{e,i}
  std::vector<std::vector<Kite>> vertices_of_cell;       // VC(i), A_{i,ν}
  std::vector<std::vector<Incidence>> cells_of_edge;     // CE(e), n_{e,i}
  std::vector<std::vector<Incidence>> vertices_of_edge;  // VE(e), t_{e,ν}
  std::vector<std::vector<Kite>> cells_of_vertex;        // CV(ν), A_{i,ν}
  std::vector<std::vector<Incidence>> edges_of_vertex;   // EV(ν), t_{e,ν}

  std::size_t n_cells() const { return cell_center.size(); }
  std::size_t n_vertices() const { return vertex_position.size(); }
  std::size_t n_edges() const { return edge_normal.size(); }
  std::size_t n_boundary_cells() const { return count(cell_on_boundary); }
  std::size_t n_interior_cells() const { return n_cells() - n_boundary_cells(); }
  std::size_t n_boundary_edges() const { return count(edge_on_boundary); }
  std::size_t n_interior_edges() const { return n_edges() - n_boundary_edges(); }

  bool is_boundary_cell(std::size_t i) const { return cell_on_boundary[i] != 0; }
  bool is_boundary_edge(std::size_t e) const { return edge_on_boundary[e] != 0; }

  double total_area() const {
    double a = 0.0;
    for (double v : cell_area) a += v;
    return a;
  }

  /// b − a, wrapped to the nearest periodic image on periodic meshes.
  Vec2 displacement(Vec2 a, Vec2 b) const {
    Vec2 d = b - a;
    if (periodic) {
      d.x -= period_x * std::round(d.x / period_x);
      d.y -= period_y * std::round(d.y / period_y);
    }
    return d;
  }

 private:
  static std::size_t count(const std::vector<std::uint8_t>& flags) {
    std::size_t n = 0;
    for (auto f : flags) n += f != 0;
    return n;
  }
};

/// Doubly periodic uniform quadrilateral mesh on [0,Lx)×[0,Ly).
///
/// Cell (a,b) has index b·nx + a and center ((a+½)hx, (b+½)hy); vertex (a,b)
/// sits at (a·hx, b·hy). Edge 2(b·nx+a) is the east face of cell (a,b)
/// (n_e = x̂) and edge 2(b·nx+a)+1 its north face (n_e = ŷ).
inline DualMesh build_periodic_quad_mesh(std::size_t nx, std::size_t ny,
                                         double lx, double ly) {
  if (nx < 3 || ny < 3)
    throw InvalidArgument("periodic quad mesh needs nx, ny >= 3");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw InvalidArgument("periodic quad mesh needs positive extents");

  const double hx = lx / static_cast<double>(nx);
  const double hy = ly / static_cast<double>(ny);
  const std::size_t nc = nx * ny;
  auto cell = [&](std::size_t a, std::size_t b) {
    return (b % ny) * nx + (a % nx);
  };
  auto vert = cell;

  DualMesh m;
  m.periodic = true;
  m.period_x = lx;
  m.period_y = ly;

  m.cell_center.resize(nc);
  m.cell_area.assign(nc, hx * hy);
  m.cell_on_boundary.assign(nc, 0);
  m.vertex_position.resize(nc);
  m.vertex_area.assign(nc, hx * hy);
  m.edges_of_cell.resize(nc);
  m.vertices_of_cell.resize(nc);
  m.cells_of_vertex.resize(nc);
  m.edges_of_vertex.resize(nc);

  const std::size_t ne = 2 * nc;
  m.edge_normal.resize(ne);
  m.edge_tangent.resize(ne);
  m.primal_length.resize(ne);
  m.dual_length.resize(ne);
  m.diamond_area.assign(ne, 0.5 * hx * hy);
  m.edge_on_boundary.assign(ne, 0);
  m.cells_of_edge.resize(ne);
  m.vertices_of_edge.resize(ne);

  for (std::size_t b = 0; b < ny; ++b) {
    for (std::size_t a = 0; a < nx; ++a) {
      const std::size_t i = cell(a, b);
      m.cell_center[i] = {(a + 0.5) * hx, (b + 0.5) * hy};
      m.vertex_position[i] = {a * hx, b * hy};

      const std::size_t east = 2 * i;
      m.edge_normal[east] = {1.0, 0.0};
      m.edge_tangent[east] = {0.0, 1.0};
      m.primal_length[east] = hy;
      m.dual_length[east] = hx;
      m.cells_of_edge[east] = {{i, +1}, {cell(a + 1, b), -1}};
      m.vertices_of_edge[east] = {{vert(a + 1, b), +1},
                                  {vert(a + 1, b + 1), -1}};

      const std::size_t north = 2 * i + 1;
      m.edge_normal[north] = {0.0, 1.0};
      m.edge_tangent[north] = {-1.0, 0.0};
      m.primal_length[north] = hx;
      m.dual_length[north] = hy;
      m.cells_of_edge[north] = {{i, +1}, {cell(a, b + 1), -1}};
      m.vertices_of_edge[north] = {{vert(a + 1, b + 1), +1},
                                   {vert(a, b + 1), -1}};
    }
  }

  // Inverse incidences, kept in counter-clockwise order around each element.
  for (std::size_t b = 0; b < ny; ++b) {
    for (std::size_t a = 0; a < nx; ++a) {
      const std::size_t i = cell(a, b);
      m.edges_of_cell[i] = {{2 * i, +1},
                            {2 * i + 1, +1},
                            {2 * cell(a + nx - 1, b), -1},
                            {2 * cell(a, b + ny - 1) + 1, -1}};
      const double quarter = 0.25 * hx * hy;
      m.vertices_of_cell[i] = {{vert(a, b), quarter},
                               {vert(a + 1, b), quarter},
                               {vert(a + 1, b + 1), quarter},
                               {vert(a, b + 1), quarter}};
      // Vertex (a,b) is the south-west corner of cell (a,b).
      const std::size_t v = vert(a, b);
      m.cells_of_vertex[v] = {{cell(a, b), quarter},
                              {cell(a + nx - 1, b), quarter},
                              {cell(a + nx - 1, b + ny - 1), quarter},
                              {cell(a, b + ny - 1), quarter}};
    }
  }
  for (std::size_t e = 0; e < ne; ++e)
    for (const Incidence& vi : m.vertices_of_edge[e])
      m.edges_of_vertex[vi.index].push_back({e, vi.sign});
  return m;
}

struct ValidationCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // worst defect observed
  long where = -1;     // offending element index, -1 if none
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  double min_length = 0.0;
  double max_length = 0.0;
  /// M/m of the quasi-uniformity bound m·h ≤ l_e, d_e ≤ M·h.
  double quasi_uniformity_ratio = 0.0;
  /// max |s − ½| where s is the relative position of the edge-pair
  /// intersection along the dual edge. Reported, not enforced.
  double max_bisection_defect = 0.0;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

struct CheckBuilder {
  ValidationCheck check;
  double tolerance;

  CheckBuilder(std::string name, double tol) : tolerance(tol) {
    check.name = std::move(name);
  }
  void observe(double defect, std::size_t where) {
    if (std::isnan(defect)) defect = INFINITY;
    if (defect > check.worst) {
      check.worst = defect;
      if (check.passed) check.where = static_cast<long>(where);
    }
    if (defect > tolerance && check.passed) {
      check.passed = false;
      check.where = static_cast<long>(where);
    }
  }
  void fail(std::size_t where, std::string detail) {
    if (check.passed) {
      check.passed = false;
      check.where = static_cast<long>(where);
      check.detail = std::move(detail);
    }
  }
  ValidationCheck done() {
    if (check.passed) check.where = -1;
    return check;
  }
};

}  // namespace detail

/// Checks every structural and geometric invariant of the mesh. Never throws
/// on bad geometry; failures are reported per check.
inline ValidationReport validate_mesh(const DualMesh& m) {
  ValidationReport report;
  const std::size_t nc = m.n_cells(), nv = m.n_vertices(), ne = m.n_edges();

  {
    detail::CheckBuilder c("array-sizes", 0.0);
    auto need = [&](std::size_t got, std::size_t want, std::size_t tag) {
      if (got != want) c.fail(tag, "array length mismatch");
    };
    need(m.cell_area.size(), nc, 0);
    need(m.cell_on_boundary.size(), nc, 1);
    need(m.edges_of_cell.size(), nc, 2);
    need(m.vertices_of_cell.size(), nc, 3);
    need(m.vertex_area.size(), nv, 4);
    need(m.cells_of_vertex.size(), nv, 5);
    need(m.edges_of_vertex.size(), nv, 6);
    need(m.edge_tangent.size(), ne, 7);
    need(m.primal_length.size(), ne, 8);
    need(m.dual_length.size(), ne, 9);
    need(m.diamond_area.size(), ne, 10);
    need(m.edge_on_boundary.size(), ne, 11);
    need(m.cells_of_edge.size(), ne, 12);
    need(m.vertices_of_edge.size(), ne, 13);
    report.checks.push_back(c.done());
    if (!report.checks.back().passed) return report;
  }

  {
    detail::CheckBuilder c("index-range", 0.0);
    auto scan = [&](const auto& lists, std::size_t bound) {
      for (std::size_t k = 0; k < lists.size(); ++k)
        for (const auto& x : lists[k])
          if (x.index >= bound) c.fail(k, "dangling index");
    };
    scan(m.edges_of_cell, ne);
    scan(m.vertices_of_cell, nv);
    scan(m.cells_of_edge, nc);
    scan(m.vertices_of_edge, nv);
    scan(m.cells_of_vertex, nc);
    scan(m.edges_of_vertex, ne);
    report.checks.push_back(c.done());
    if (!report.checks.back().passed) return report;
  }

  {
    detail::CheckBuilder c("euler", 0.0);
    // Cell and edge counts here include the boundary ones.
    const long lhs = static_cast<long>(nc + nv);
    const long rhs = static_cast<long>(ne) + (m.periodic ? 0 : 1);
    c.check.worst = static_cast<double>(std::labs(lhs - rhs));
    if (lhs != rhs)
      c.fail(0, m.periodic ? "N_c + N_v != N_e (torus)"
                           : "N_c + N_cb + N_v != N_e + N_eb + 1");
    report.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("cardinality", 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
      const std::size_t want_v = m.is_boundary_edge(e) ? 1 : 2;
      if (m.cells_of_edge[e].size() != 2)
        c.fail(e, "edge does not have two cells");
      if (m.vertices_of_edge[e].size() != want_v)
        c.fail(e, "unexpected number of vertices on edge");
    }
    report.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("boundary-flags", 0.0);
    if (m.periodic) {
      for (std::size_t i = 0; i < nc; ++i)
        if (m.is_boundary_cell(i)) c.fail(i, "boundary cell on periodic mesh");
      for (std::size_t e = 0; e < ne; ++e)
        if (m.is_boundary_edge(e)) c.fail(e, "boundary edge on periodic mesh");
    } else {
      for (std::size_t e = 0; e < ne; ++e)
        if (m.is_boundary_edge(e))
          for (const auto& ci : m.cells_of_edge[e])
            if (!m.is_boundary_cell(ci.index))
              c.fail(e, "boundary edge touches an interior cell");
    }
    report.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("unit-vectors", 1e-12);
    for (std::size_t e = 0; e < ne; ++e) {
      const Vec2 n = m.edge_normal[e], t = m.edge_tangent[e];
      double d = std::abs(norm(n) - 1.0);
      d = std::max(d, std::abs(norm(t) - 1.0));
      d = std::max(d, std::abs(dot(n, t)));
      d = std::max(d, norm(t - perp(n)));
      c.observe(d, e);
    }
    report.checks.push_back(c.done());
  }

  // Incidence signs must agree between the two directions of each relation.
  {
    detail::CheckBuilder c("orientation", 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& ce = m.cells_of_edge[e];
      if (ce.size() == 2 && ce[0].sign + ce[1].sign != 0)
        c.fail(e, "n_{e,i} of the two cells are not opposite");
      for (const auto& ci : ce) {
        if (ci.sign != 1 && ci.sign != -1) c.fail(e, "n_{e,i} not ±1");
        bool found = false;
        for (const auto& ei : m.edges_of_cell[ci.index])
          if (ei.index == e) found = ei.sign == ci.sign;
        if (!found) c.fail(e, "EC/CE orientation mismatch");
      }
      for (const auto& vi : m.vertices_of_edge[e]) {
        if (vi.sign != 1 && vi.sign != -1) c.fail(e, "t_{e,v} not ±1");
        bool found = false;
        for (const auto& ei : m.edges_of_vertex[vi.index])
          if (ei.index == e) found = ei.sign == vi.sign;
        if (!found) c.fail(e, "EV/VE orientation mismatch");
      }
      const auto& ve = m.vertices_of_edge[e];
      if (ve.size() == 2 && ve[0].sign + ve[1].sign != 0)
        c.fail(e, "t_{e,v} of the two vertices are not opposite");
      if (ce.size() == 2) {
        // n_e points away from the cell with indicator +1.
        const Vec2 from = m.cell_center[ce[0].index];
        const Vec2 to = m.cell_center[ce[1].index];
        const double s = dot(m.edge_normal[e], m.displacement(from, to));
        if (!(s * ce[0].sign > 0.0)) c.fail(e, "n_{e,i} disagrees with geometry");
        // t_e points away from the vertex with indicator +1.
        const Vec2 mid = from + 0.5 * m.displacement(from, to);
        for (const auto& vi : ve) {
          const double tv = dot(m.edge_tangent[e],
                                m.displacement(m.vertex_position[vi.index], mid));
          if (!(tv * vi.sign > 0.0))
            c.fail(e, "t_{e,v} disagrees with geometry");
        }
      }
    }
    report.checks.push_back(c.done());
  }

  double min_len = INFINITY, max_len = 0.0, max_bisect = 0.0;
  {
    detail::CheckBuilder ortho("orthogonality", 1e-10);
    detail::CheckBuilder convex("diamond-convexity", 0.0);
    detail::CheckBuilder lengths("edge-measures", 1e-10);
    for (std::size_t e = 0; e < ne; ++e) {
      const auto& ce = m.cells_of_edge[e];
      const auto& ve = m.vertices_of_edge[e];
      if (ce.size() != 2 || ve.empty()) continue;
      const Vec2 xi = m.cell_center[ce[0].index];
      const Vec2 dual = m.displacement(xi, m.cell_center[ce[1].index]);
      const double d = norm(dual);
      const Vec2 c0 = m.vertex_position[ve[0].index];
      // Offsets of the dual vertices relative to the first cell center.
      const Vec2 p0 = m.displacement(xi, c0);
      Vec2 primal;
      double s_dual, l_geom;
      bool inside;
      if (ve.size() == 2) {
        const Vec2 p1 = m.displacement(xi, m.vertex_position[ve[1].index]);
        primal = p1 - p0;
        l_geom = norm(primal);
        // Intersection xi + s·dual = c0 + r·primal.
        const double det = cross(dual, primal);
        if (det == 0.0) {
          convex.fail(e, "edge pair is parallel");
          continue;
        }
        s_dual = cross(p0, primal) / det;
        const double r = cross(p0, dual) / det;
        inside = s_dual > 0.0 && s_dual < 1.0 && r > 0.0 && r < 1.0;
      } else {
        s_dual = dot(p0, dual) / (d * d);
        const Vec2 foot = s_dual * dual;
        primal = foot - p0;
        l_geom = norm(primal);
        inside = s_dual > 0.0 && s_dual < 1.0 && l_geom > 0.0;
      }
      if (!inside) convex.fail(e, "edge pair intersection outside an edge");
      convex.observe(inside ? 0.0 : 1.0, e);
      max_bisect = std::max(max_bisect, std::abs(s_dual - 0.5));

      const Vec2 n = m.edge_normal[e];
      double od = std::abs(cross(n, dual)) / d;
      if (l_geom > 0.0) od = std::max(od, std::abs(dot(n, primal)) / l_geom);
      ortho.observe(std::asin(std::min(1.0, od)), e);

      const double le = m.primal_length[e], de = m.dual_length[e];
      double ld = std::abs(de - d) / d;
      if (l_geom > 0.0) ld = std::max(ld, std::abs(le - l_geom) / l_geom);
      ld = std::max(ld, std::abs(m.diamond_area[e] - 0.5 * le * de) /
                            (0.5 * le * de));
      lengths.observe(ld, e);
      min_len = std::min({min_len, le, de});
      max_len = std::max({max_len, le, de});
    }
    report.checks.push_back(lengths.done());
    report.checks.push_back(ortho.done());
    report.checks.push_back(convex.done());
  }

  {
    detail::CheckBuilder c("quasi-uniformity", 0.0);
    if (!(min_len > 0.0) || !std::isfinite(max_len)) c.fail(0, "zero length edge");
    report.checks.push_back(c.done());
    report.min_length = min_len;
    report.max_length = max_len;
    report.quasi_uniformity_ratio = max_len / min_len;
    report.max_bisection_defect = max_bisect;
  }

  {
    detail::CheckBuilder c("kite-partition", 1e-10);
    for (std::size_t i = 0; i < nc; ++i) {
      double s = 0.0;
      for (const Kite& k : m.vertices_of_cell[i]) s += k.area;
      c.observe(std::abs(s - m.cell_area[i]) / m.cell_area[i], i);
    }
    for (std::size_t v = 0; v < nv; ++v) {
      double s = 0.0;
      for (const Kite& k : m.cells_of_vertex[v]) s += k.area;
      c.observe(std::abs(s - m.vertex_area[v]) / m.vertex_area[v], nc + v);
      for (const Kite& k : m.cells_of_vertex[v]) {
        bool found = false;
        for (const Kite& kk : m.vertices_of_cell[k.index])
          if (kk.index == v) found = kk.area == k.area;
        if (!found) c.fail(nc + v, "VC/CV kite mismatch");
      }
    }
    report.checks.push_back(c.done());
  }
  return report;
}

}  // namespace hamswe
