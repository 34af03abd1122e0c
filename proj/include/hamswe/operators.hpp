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

#include <cstddef>
#include <string>
#include <type_traits>

#include "hamswe/error.hpp"
#include "hamswe/fields.hpp"
#include "hamswe/mesh.hpp"

namespace hamswe {

namespace detail {

template <class Location>
void require_size(const Field<Location>& f, std::size_t n, const char* op) {
  if (f.size() != n)
    throw InvalidArgument(std::string(op) + ": expected " + std::to_string(n) +
                          " " + Location::name + " values, got " +
                          std::to_string(f.size()));
}

inline void require_boundary_values(const EdgeScalar& b, const DualMesh& m,
                                    const char* op) {
  if (m.periodic) return;
  if (m.n_boundary_edges() == 0) return;
  if (b.size() != m.n_edges())
    throw InvalidArgument(std::string(op) +
                          ": bounded mesh needs boundary edge values");
}

}  // namespace detail

// Averaging maps.

/// Kite-weighted average of the cells around each vertex.
inline VertexField cell_to_vertex(const CellField& f, const DualMesh& m) {
  detail::require_size(f, m.n_cells(), "cell_to_vertex");
  VertexField out(m.n_vertices());
  for (std::size_t v = 0; v < m.n_vertices(); ++v) {
    double s = 0.0;
    for (const Kite& k : m.cells_of_vertex[v]) s += k.area * f[k.index];
    out[v] = s / m.vertex_area[v];
  }
  return out;
}

/// Kite-weighted average of the vertices of each cell; adjoint of
/// cell_to_vertex in the area-weighted pairings.
inline CellField vertex_to_cell(const VertexField& f, const DualMesh& m) {
  detail::require_size(f, m.n_vertices(), "vertex_to_cell");
  CellField out(m.n_cells());
  for (std::size_t i = 0; i < m.n_cells(); ++i) {
    double s = 0.0;
    for (const Kite& k : m.vertices_of_cell[i]) s += k.area * f[k.index];
    out[i] = s / m.cell_area[i];
  }
  return out;
}

/// Arithmetic mean over the cells sharing each edge.
inline EdgeScalar cell_to_edge(const CellField& f, const DualMesh& m) {
  detail::require_size(f, m.n_cells(), "cell_to_edge");
  EdgeScalar out(m.n_edges());
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    const auto& ce = m.cells_of_edge[e];
    double s = 0.0;
    for (const Incidence& c : ce) s += f[c.index];
    out[e] = s / static_cast<double>(ce.size());
  }
  return out;
}

/// Adjoint of cell_to_edge: each edge hands A_e/|CE(e)| of its value to
/// each of its cells, normalized by the cell area.
inline CellField edge_to_cell(const EdgeScalar& f, const DualMesh& m) {
  detail::require_size(f, m.n_edges(), "edge_to_cell");
  CellField out(m.n_cells());
  for (std::size_t i = 0; i < m.n_cells(); ++i) {
    double s = 0.0;
    for (const Incidence& ei : m.edges_of_cell[i]) {
      const std::size_t e = ei.index;
      s += f[e] * m.diamond_area[e] /
           static_cast<double>(m.cells_of_edge[e].size());
    }
    out[i] = s / m.cell_area[i];
  }
  return out;
}

// Gradients.

/// Normal gradient of a cell field across each edge.
inline NormalEdgeField grad_cell(const CellField& f, const DualMesh& m) {
  detail::require_size(f, m.n_cells(), "grad_cell");
  NormalEdgeField out(m.n_edges());
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    double s = 0.0;
    for (const Incidence& c : m.cells_of_edge[e]) s += f[c.index] * c.sign;
    out[e] = -s / m.dual_length[e];
  }
  return out;
}

/// Tangential gradient of a vertex field along each primal edge. On a
/// boundary edge the missing end value is `boundary[e]`; `boundary` is
/// ignored on periodic meshes.
inline TangentialEdgeField grad_vertex(const VertexField& f,
                                       const EdgeScalar& boundary,
                                       const DualMesh& m) {
  detail::require_size(f, m.n_vertices(), "grad_vertex");
  detail::require_boundary_values(boundary, m, "grad_vertex");
  TangentialEdgeField out(m.n_edges());
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    const auto& ve = m.vertices_of_edge[e];
    const double l = m.primal_length[e];
    if (m.is_boundary_edge(e)) {
      const Incidence& v = ve.front();
      out[e] = v.sign * (boundary[e] - f[v.index]) / l;
    } else {
      double s = 0.0;
      for (const Incidence& v : ve) s += f[v.index] * v.sign;
      out[e] = -s / l;
    }
  }
  return out;
}

inline TangentialEdgeField grad_vertex(const VertexField& f, const DualMesh& m) {
  return grad_vertex(f, EdgeScalar(), m);
}

/// Tangential component of the skew gradient of a cell field. Same numbers
/// as grad_cell, carried on t_e.
inline TangentialEdgeField skew_grad_cell(const CellField& f, const DualMesh& m) {
  return relabel<location::TangentialEdge>(grad_cell(f, m));
}

/// Normal component of the skew gradient of a vertex field.
inline NormalEdgeField skew_grad_vertex(const VertexField& f,
                                        const EdgeScalar& boundary,
                                        const DualMesh& m) {
  return relabel<location::NormalEdge>(-grad_vertex(f, boundary, m));
}

inline NormalEdgeField skew_grad_vertex(const VertexField& f, const DualMesh& m) {
  return skew_grad_vertex(f, EdgeScalar(), m);
}

// Divergence and curl. Boundary cells and vertices only see their
// in-domain edges.

inline CellField div_normal(const NormalEdgeField& u, const DualMesh& m) {
  detail::require_size(u, m.n_edges(), "div_normal");
  CellField out(m.n_cells());
  for (std::size_t i = 0; i < m.n_cells(); ++i) {
    double s = 0.0;
    for (const Incidence& ei : m.edges_of_cell[i])
      s += u[ei.index] * m.primal_length[ei.index] * ei.sign;
    out[i] = s / m.cell_area[i];
  }
  return out;
}

inline CellField curl_tangential(const TangentialEdgeField& v, const DualMesh& m) {
  return div_normal(relabel<location::NormalEdge>(v), m);
}

inline VertexField curl_normal(const NormalEdgeField& u, const DualMesh& m) {
  detail::require_size(u, m.n_edges(), "curl_normal");
  VertexField out(m.n_vertices());
  for (std::size_t v = 0; v < m.n_vertices(); ++v) {
    double s = 0.0;
    for (const Incidence& ei : m.edges_of_vertex[v])
      s += u[ei.index] * m.dual_length[ei.index] * ei.sign;
    out[v] = -s / m.vertex_area[v];
  }
  return out;
}

inline VertexField div_tangential(const TangentialEdgeField& v, const DualMesh& m) {
  return -curl_normal(relabel<location::NormalEdge>(v), m);
}

inline CellField laplacian_cell(const CellField& f, const DualMesh& m) {
  return div_normal(grad_cell(f, m), m);
}

// Area-weighted pairings.

inline double inner_product(const CellField& a, const CellField& b,
                            const DualMesh& m) {
  detail::require_size(a, m.n_cells(), "inner_product");
  detail::require_size(b, m.n_cells(), "inner_product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i] * m.cell_area[i];
  return s;
}

inline double inner_product(const VertexField& a, const VertexField& b,
                            const DualMesh& m) {
  detail::require_size(a, m.n_vertices(), "inner_product");
  detail::require_size(b, m.n_vertices(), "inner_product");
  double s = 0.0;
  for (std::size_t v = 0; v < a.size(); ++v) s += a[v] * b[v] * m.vertex_area[v];
  return s;
}

template <class Location>
  requires std::is_same_v<Location, location::NormalEdge> ||
           std::is_same_v<Location, location::TangentialEdge>
double inner_product(const Field<Location>& a, const Field<Location>& b,
                     const DualMesh& m) {
  detail::require_size(a, m.n_edges(), "inner_product");
  detail::require_size(b, m.n_edges(), "inner_product");
  double s = 0.0;
  for (std::size_t e = 0; e < a.size(); ++e)
    s += a[e] * b[e] * m.diamond_area[e];
  return s;
}

/// ½ Σ_{e∈BE} w_e u_e d_e Σ_{ν∈VE(e)} t_{e,ν}, the boundary term of the
/// bounded-mesh integration-by-parts identities.
template <class Location>
double boundary_flux(const EdgeScalar& w, const Field<Location>& u,
                     const DualMesh& m) {
  double s = 0.0;
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    if (!m.is_boundary_edge(e)) continue;
    double t = 0.0;
    for (const Incidence& v : m.vertices_of_edge[e]) t += v.sign;
    s += w[e] * u[e] * m.dual_length[e] * t;
  }
  return 0.5 * s;
}

}  // namespace hamswe
