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
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hamswe/error.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/random.hpp"

namespace hamswe {

/// Counter-clockwise index triple into the generator list.
using Triangle = std::array<std::size_t, 3>;

namespace detail {

inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  const double bb = dot(ab, ab), cc = dot(ac, ac);
  return a + Vec2{(ac.y * bb - ab.y * cc) / d, (ab.x * cc - ac.x * bb) / d};
}

inline double polygon_area(const std::vector<Vec2>& p) {
  double a = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    a += cross(p[k], p[(k + 1) % p.size()]);
  return 0.5 * a;
}

inline double extent(const std::vector<Vec2>& pts) {
  double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  for (Vec2 p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  return std::max(hi_x - lo_x, hi_y - lo_y);
}

/// Generators on the boundary of a convex counter-clockwise domain, in
/// counter-clockwise order starting at the first domain corner.
inline std::vector<std::size_t> boundary_cycle(const std::vector<Vec2>& pts,
                                               const std::vector<Vec2>& domain,
                                               double tol) {
  std::vector<std::size_t> cycle;
  std::vector<int> seen(pts.size(), 0);
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const Vec2 a = domain[k], b = domain[(k + 1) % domain.size()];
    const Vec2 ab = b - a;
    const double len = norm(ab);
    std::vector<std::pair<double, std::size_t>> on_side;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec2 ap = pts[i] - a;
      const double s = dot(ap, ab) / (len * len);
      if (std::abs(cross(ab, ap)) <= tol * len && s > -tol / len &&
          s < 1.0 - tol / len)
        on_side.emplace_back(s, i);
    }
    std::sort(on_side.begin(), on_side.end());
    if (on_side.empty() || norm(pts[on_side.front().second] - a) > tol)
      throw InvalidArgument("domain corner " + std::to_string(k) +
                            " is not a generator");
    for (auto [s, i] : on_side) {
      if (seen[i]++) throw MeshQualityError("generator " + std::to_string(i) +
                                            " lies on two domain sides");
      cycle.push_back(i);
    }
  }
  return cycle;
}

}  // namespace detail

/// Delaunay triangulation of generators inside a convex polygon whose
/// boundary generators are `cycle` (counter-clockwise, including points in
/// the interior of polygon sides). Built by advancing a front of open edges
/// from the boundary inward, picking for each edge the point that sees it at
/// the largest angle.
inline std::vector<Triangle> delaunay_triangulate(
    const std::vector<Vec2>& pts, const std::vector<std::size_t>& cycle) {
  const std::size_t n = pts.size();
  const double scale = detail::extent(pts);
  const double area_tol = 1e-12 * scale * scale;
  const double circle_tol = 1e-10;

  std::set<std::pair<std::size_t, std::size_t>> open, closed;
  std::vector<std::pair<std::size_t, std::size_t>> queue;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const auto e = std::make_pair(cycle[k], cycle[(k + 1) % cycle.size()]);
    open.insert(e);
    queue.push_back(e);
  }

  std::vector<Triangle> tris;
  while (!queue.empty()) {
    const auto [a, b] = queue.back();
    queue.pop_back();
    if (!open.erase({a, b})) continue;
    closed.insert({a, b});
    const Vec2 pa = pts[a], pb = pts[b];

    std::size_t best = n;
    double best_cos = 2.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (c == a || c == b) continue;
      if (detail::orient(pa, pb, pts[c]) <= area_tol) continue;
      const Vec2 ca = pa - pts[c], cb = pb - pts[c];
      const double cs = dot(ca, cb) / (norm(ca) * norm(cb));
      if (cs < best_cos) {
        best_cos = cs;
        best = c;
      }
    }
    const std::string ab_name =
        "generators " + std::to_string(a) + "-" + std::to_string(b);
    if (best == n)
      throw MeshQualityError("degenerate triangulation: no point sees edge " +
                             ab_name);

    const Vec2 o = detail::circumcenter(pa, pb, pts[best]);
    const double r = norm(pa - o);
    for (std::size_t d = 0; d < n; ++d) {
      if (d == a || d == b || d == best) continue;
      const double margin = (norm(pts[d] - o) - r) / r;
      if (margin <= circle_tol)
        throw MeshQualityError(
            "degenerate triangulation: generators " + std::to_string(a) + ", " +
            std::to_string(b) + ", " + std::to_string(best) + ", " +
            std::to_string(d) + " are cocircular across edge " + ab_name);
    }

    const std::size_t c = best;
    tris.push_back({a, b, c});
    for (auto [x, y] : {std::make_pair(b, c), std::make_pair(c, a)}) {
      if (open.erase({x, y})) {
        closed.insert({x, y});
        continue;
      }
      if (closed.count({x, y}))
        throw MeshQualityError("degenerate triangulation: overlapping "
                               "triangles at generators " +
                               std::to_string(x) + "-" + std::to_string(y));
      if (!closed.count({y, x}) && open.insert({y, x}).second)
        queue.emplace_back(y, x);
    }
  }

  std::vector<Vec2> hull;
  for (std::size_t i : cycle) hull.push_back(pts[i]);
  double covered = 0.0;
  for (const Triangle& t : tris)
    covered += 0.5 * detail::orient(pts[t[0]], pts[t[1]], pts[t[2]]);
  const double want = detail::polygon_area(hull);
  if (tris.size() != 2 * n - cycle.size() - 2 ||
      std::abs(covered - want) > 1e-10 * want)
    throw MeshQualityError("degenerate triangulation: triangles do not tile "
                           "the domain");
  return tris;
}

/// Voronoi/Delaunay dual mesh of `generators` clipped to the convex polygon
/// `domain`. Every domain corner must be a generator; generators on the
/// domain sides become boundary cells, whose centers the boundary passes
/// through. Every Delaunay triangle must contain its circumcenter strictly.
inline DualMesh build_bounded_voronoi_mesh(const std::vector<Vec2>& generators,
                                           std::vector<Vec2> domain) {
  if (generators.size() < 3)
    throw MeshQualityError("degenerate triangulation: fewer than 3 generators");
  if (domain.size() < 3) throw InvalidArgument("domain needs 3 corners");
  if (detail::polygon_area(domain) < 0.0)
    std::reverse(domain.begin(), domain.end());
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const Vec2 a = domain[k], b = domain[(k + 1) % domain.size()],
               c = domain[(k + 2) % domain.size()];
    if (!(detail::orient(a, b, c) > 0.0))
      throw InvalidArgument("domain must be a strictly convex polygon");
  }

  const std::size_t n = generators.size();
  const double scale = detail::extent(generators);
  const double tol = 1e-12 * scale;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < domain.size(); ++k) {
      const Vec2 a = domain[k], b = domain[(k + 1) % domain.size()];
      if (cross(b - a, generators[i] - a) < -tol * norm(b - a))
        throw InvalidArgument("generator " + std::to_string(i) +
                              " lies outside the domain");
    }
    for (std::size_t j = i + 1; j < n; ++j)
      if (norm(generators[i] - generators[j]) <= tol)
        throw MeshQualityError("degenerate triangulation: duplicate "
                               "generators " +
                               std::to_string(i) + ", " + std::to_string(j));
  }

  const auto cycle = detail::boundary_cycle(generators, domain, tol);
  const auto tris = delaunay_triangulate(generators, cycle);

  std::vector<std::uint8_t> on_boundary(n, 0);
  for (std::size_t i : cycle) on_boundary[i] = 1;
  std::set<std::pair<std::size_t, std::size_t>> hull_edges;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const std::size_t a = cycle[k], b = cycle[(k + 1) % cycle.size()];
    hull_edges.insert({std::min(a, b), std::max(a, b)});
  }

  // Edge numbering in order of first appearance.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_id;
  std::vector<std::pair<std::size_t, std::size_t>> edge_cells;
  std::vector<std::vector<std::size_t>> edge_tris;
  auto edge_of = [&](std::size_t a, std::size_t b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto [it, fresh] = edge_id.emplace(key, edge_cells.size());
    if (fresh) {
      edge_cells.push_back(key);
      edge_tris.emplace_back();
    }
    return it->second;
  };
  for (std::size_t t = 0; t < tris.size(); ++t)
    for (int k = 0; k < 3; ++k)
      edge_tris[edge_of(tris[t][k], tris[t][(k + 1) % 3])].push_back(t);

  DualMesh m;
  m.cell_center = generators;
  m.cell_on_boundary = on_boundary;
  m.cell_area.assign(n, 0.0);
  m.edges_of_cell.resize(n);
  m.vertices_of_cell.resize(n);

  const std::size_t nv = tris.size();
  m.vertex_position.resize(nv);
  m.vertex_area.assign(nv, 0.0);
  m.cells_of_vertex.resize(nv);
  m.edges_of_vertex.resize(nv);
  for (std::size_t t = 0; t < nv; ++t) {
    const Vec2 a = generators[tris[t][0]], b = generators[tris[t][1]],
               c = generators[tris[t][2]];
    const Vec2 o = detail::circumcenter(a, b, c);
    const double area = detail::orient(a, b, c);
    const std::array<double, 3> bary = {detail::orient(o, b, c) / area,
                                        detail::orient(a, o, c) / area,
                                        detail::orient(a, b, o) / area};
    for (int k = 0; k < 3; ++k) {
      if (!(bary[k] > 1e-9)) {
        const std::size_t e = edge_of(tris[t][(k + 1) % 3], tris[t][(k + 2) % 3]);
        throw MeshQualityError(
            "non-convex diamond: angle at generator " +
                std::to_string(tris[t][k]) +
                " is not acute, circumcenter leaves its triangle across edge " +
                std::to_string(e),
            static_cast<long>(e));
      }
    }
    m.vertex_position[t] = o;
  }

  const std::size_t ne = edge_cells.size();
  m.edge_normal.resize(ne);
  m.edge_tangent.resize(ne);
  m.primal_length.resize(ne);
  m.dual_length.resize(ne);
  m.diamond_area.resize(ne);
  m.edge_on_boundary.assign(ne, 0);
  m.cells_of_edge.resize(ne);
  m.vertices_of_edge.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto [i, j] = edge_cells[e];
    const Vec2 d = generators[j] - generators[i];
    const Vec2 mid = generators[i] + 0.5 * d;
    const Vec2 nrm = (1.0 / norm(d)) * d;
    m.edge_normal[e] = nrm;
    m.edge_tangent[e] = perp(nrm);
    m.dual_length[e] = norm(d);
    m.cells_of_edge[e] = {{i, +1}, {j, -1}};
    const bool boundary = edge_tris[e].size() == 1;
    if (boundary && !hull_edges.count(edge_cells[e]))
      throw MeshQualityError("interior edge with a single triangle",
                             static_cast<long>(e));
    m.edge_on_boundary[e] = boundary;
    for (std::size_t t : edge_tris[e]) {
      const double s = dot(m.edge_tangent[e], mid - m.vertex_position[t]);
      m.vertices_of_edge[e].push_back({t, s > 0.0 ? +1 : -1});
      m.edges_of_vertex[t].push_back({e, s > 0.0 ? +1 : -1});
    }
    m.primal_length[e] =
        boundary ? norm(mid - m.vertex_position[edge_tris[e][0]])
                 : norm(m.vertex_position[edge_tris[e][0]] -
                        m.vertex_position[edge_tris[e][1]]);
    m.diamond_area[e] = 0.5 * m.primal_length[e] * m.dual_length[e];
  }

  for (std::size_t t = 0; t < nv; ++t) {
    const Vec2 o = m.vertex_position[t];
    for (int k = 0; k < 3; ++k) {
      const std::size_t i = tris[t][k];
      const Vec2 x = generators[i];
      const Vec2 m_next = 0.5 * (x + generators[tris[t][(k + 1) % 3]]);
      const Vec2 m_prev = 0.5 * (x + generators[tris[t][(k + 2) % 3]]);
      const double kite = std::abs(detail::polygon_area({x, m_next, o, m_prev}));
      m.vertices_of_cell[i].push_back({t, kite});
      m.cells_of_vertex[t].push_back({i, kite});
      m.cell_area[i] += kite;
      m.vertex_area[t] += kite;
    }
  }

  // Counter-clockwise order around each generator.
  for (std::size_t e = 0; e < ne; ++e)
    for (const Incidence& ci : m.cells_of_edge[e])
      m.edges_of_cell[ci.index].push_back({e, ci.sign});
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 x = generators[i];
    auto angle = [&](Vec2 p) { return std::atan2(p.y - x.y, p.x - x.x); };
    std::sort(m.edges_of_cell[i].begin(), m.edges_of_cell[i].end(),
              [&](const Incidence& a, const Incidence& b) {
                const auto& ea = edge_cells[a.index];
                const auto& eb = edge_cells[b.index];
                const std::size_t ja = ea.first == i ? ea.second : ea.first;
                const std::size_t jb = eb.first == i ? eb.second : eb.first;
                return angle(generators[ja]) < angle(generators[jb]);
              });
    std::sort(m.vertices_of_cell[i].begin(), m.vertices_of_cell[i].end(),
              [&](const Kite& a, const Kite& b) {
                return angle(m.vertex_position[a.index]) <
                       angle(m.vertex_position[b.index]);
              });
  }
  return m;
}

/// Voronoi/Delaunay mesh clipped to the convex hull of the generators.
inline DualMesh build_bounded_voronoi_mesh(const std::vector<Vec2>& generators) {
  if (generators.size() < 3)
    throw MeshQualityError("degenerate triangulation: fewer than 3 generators");
  std::vector<Vec2> p = generators;
  std::sort(p.begin(), p.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const double tol = 1e-12 * detail::extent(p) * detail::extent(p);
  std::vector<Vec2> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t start = hull.size();
    for (Vec2 q : p) {
      while (hull.size() >= start + 2 &&
             detail::orient(hull[hull.size() - 2], hull.back(), q) <= tol)
        hull.pop_back();
      hull.push_back(q);
    }
    hull.pop_back();
    std::reverse(p.begin(), p.end());
  }
  if (hull.size() < 3)
    throw MeshQualityError("degenerate triangulation: generators are collinear");
  return build_bounded_voronoi_mesh(generators, hull);
}

/// Triangular-lattice generators filling a regular hexagon `rings` lattice
/// steps across (3R(R+1)+1 points). Interior points are displaced by up to
/// `jitter`·`spacing` in each coordinate.
inline std::vector<Vec2> hexagon_generators(std::size_t rings, double spacing,
                                            double jitter = 0.0,
                                            std::uint64_t seed = 1) {
  if (rings < 1) throw InvalidArgument("hexagon needs at least one ring");
  Lcg64 rng(seed);
  const long r = static_cast<long>(rings);
  const Vec2 e1{spacing, 0.0}, e2{0.5 * spacing, 0.5 * std::sqrt(3.0) * spacing};
  std::vector<Vec2> pts;
  for (long b = -r; b <= r; ++b) {
    for (long a = -r; a <= r; ++a) {
      const long hex = std::max({std::labs(a), std::labs(b), std::labs(a + b)});
      if (hex > r) continue;
      Vec2 p = static_cast<double>(a) * e1 + static_cast<double>(b) * e2;
      if (hex < r) {
        const double dx = rng.uniform(-jitter, jitter);
        const double dy = rng.uniform(-jitter, jitter);
        p = p + spacing * Vec2{dx, dy};
      }
      pts.push_back(p);
    }
  }
  return pts;
}

/// Corners of the hexagon spanned by `hexagon_generators`.
inline std::vector<Vec2> hexagon_domain(std::size_t rings, double spacing) {
  const double r = static_cast<double>(rings);
  const Vec2 e1{spacing, 0.0}, e2{0.5 * spacing, 0.5 * std::sqrt(3.0) * spacing};
  const std::array<std::pair<double, double>, 6> steps = {
      {{r, 0.0}, {0.0, r}, {-r, r}, {-r, 0.0}, {0.0, -r}, {r, -r}}};
  std::vector<Vec2> corners;
  for (auto [a, b] : steps) corners.push_back(a * e1 + b * e2);
  return corners;
}

}  // namespace hamswe
