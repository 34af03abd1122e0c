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
#include <vector>

#include "hamswe/elliptic.hpp"
#include "hamswe/error.hpp"
#include "hamswe/fields.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/operators.hpp"

namespace hamswe {

struct Tendency {
  CellField dphi;
  CellField dzeta;
  CellField dgamma;
};

enum class Scheme { energy, energy_enstrophy };

/// Neighbors of each boundary cell along the boundary. Traversing
/// i1 → i → i2 keeps the domain on the left; e1 joins i1 and i, e2 joins i
/// and i2.
struct BoundaryStencil {
  struct Entry {
    std::size_t cell = 0;
    std::size_t i1 = 0, i2 = 0;
    std::size_t e1 = 0, e2 = 0;
  };
  std::vector<Entry> entries;

  static BoundaryStencil build(const DualMesh& m) {
    BoundaryStencil s;
    if (m.periodic) return s;
    for (std::size_t i = 0; i < m.n_cells(); ++i) {
      if (!m.is_boundary_cell(i)) continue;
      Entry en;
      en.cell = i;
      int found1 = 0, found2 = 0;
      for (const Incidence& ei : m.edges_of_cell[i]) {
        const std::size_t e = ei.index;
        if (!m.is_boundary_edge(e)) continue;
        std::size_t j = i;
        for (const Incidence& c : m.cells_of_edge[e])
          if (c.index != i) j = c.index;
        const Vec2 xj = m.cell_center[j];
        const Vec2 inside = m.vertex_position[m.vertices_of_edge[e].front().index];
        double t_sum = 0.0;
        for (const Incidence& v : m.vertices_of_edge[e]) t_sum += v.sign;
        if (cross(m.cell_center[i] - xj, inside - xj) > 0.0) {
          en.i1 = j;
          en.e1 = e;
          ++found1;
          if (t_sum != ei.sign)
            throw MeshQualityError("boundary tangent sum disagrees at edge " +
                                       std::to_string(e),
                                   static_cast<long>(e));
        } else {
          en.i2 = j;
          en.e2 = e;
          ++found2;
          if (t_sum != -ei.sign)
            throw MeshQualityError("boundary tangent sum disagrees at edge " +
                                       std::to_string(e),
                                   static_cast<long>(e));
        }
      }
      if (found1 != 1 || found2 != 1)
        throw MeshQualityError("boundary cell " + std::to_string(i) +
                               " does not have exactly two boundary edges");
      s.entries.push_back(en);
    }
    return s;
  }
};

/// J(a, b)_e = [∇⊥ã]_e [∇b]_e − [∇⊥b̃]_e [∇a]_e.
inline EdgeScalar jacobian_h(const CellField& a, const CellField& b,
                             const DualMesh& m) {
  const NormalEdgeField sa = skew_grad_tilde(a, m), sb = skew_grad_tilde(b, m);
  const NormalEdgeField ga = grad_cell(a, m), gb = grad_cell(b, m);
  EdgeScalar j(m.n_edges());
  for (std::size_t e = 0; e < j.size(); ++e)
    j[e] = sa[e] * gb[e] - sb[e] * ga[e];
  return j;
}

namespace detail {

inline void require_stencil(const BoundaryStencil* s, const DualMesh& m) {
  if (!m.periodic && m.n_boundary_cells() > 0 &&
      (!s || s->entries.size() != m.n_boundary_cells()))
    throw ConfigError("bounded mesh needs a BoundaryStencil for every "
                      "boundary cell");
}

/// dφ, dγ and the χ part of dζ, shared by both schemes.
inline Tendency common_terms(const Diagnostics& d, const DualMesh& m,
                             const BoundaryStencil* stencil) {
  require_stencil(stencil, m);
  const EdgeScalar& qe = d.q_edge;
  const NormalEdgeField g_psi = grad_cell(d.psi, m);
  const NormalEdgeField g_chi = grad_cell(d.chi, m);

  Tendency t;
  t.dphi = -laplacian_cell(d.chi, m);
  t.dzeta = -div_normal(scale_by(qe, g_chi), m);

  t.dgamma = 0.5 * vertex_to_cell(curl_normal(scale_by(qe, g_chi), m), m);
  t.dgamma -= 0.5 * div_normal(scale_by(qe, skew_grad_tilde(d.chi, m)), m);
  t.dgamma += div_normal(scale_by(qe, g_psi), m);
  t.dgamma -= laplacian_cell(d.Phi, m);
  if (stencil) {
    for (const auto& en : stencil->entries) {
      const std::size_t i = en.cell;
      t.dgamma[i] -= (qe[en.e1] * (d.chi[i] - d.chi[en.i1]) +
                      qe[en.e2] * (d.chi[en.i2] - d.chi[i])) /
                     (4.0 * m.cell_area[i]);
    }
  }
  return t;
}

}  // namespace detail

/// Right-hand side of the energy-conserving scheme.
inline Tendency tendency_energy(const Diagnostics& d, const DualMesh& m,
                                const BoundaryStencil* stencil = nullptr) {
  Tendency t = detail::common_terms(d, m, stencil);
  const EdgeScalar& qe = d.q_edge;
  t.dzeta += 0.5 * vertex_to_cell(curl_normal(scale_by(qe, grad_cell(d.psi, m)), m), m);
  t.dzeta -= 0.5 * div_normal(scale_by(qe, skew_grad_tilde(d.psi, m)), m);
  return t;
}

/// Right-hand side of the energy- and enstrophy-conserving scheme. Only the
/// ψ part of dζ differs from tendency_energy.
inline Tendency tendency_energy_enstrophy(const Diagnostics& d,
                                          const DualMesh& m,
                                          const BoundaryStencil* stencil = nullptr) {
  Tendency t = detail::common_terms(d, m, stencil);
  const EdgeScalar& qe = d.q_edge;
  const EdgeScalar psi_e = cell_to_edge(d.psi, m);
  const NormalEdgeField g_psi = grad_cell(d.psi, m), g_q = grad_cell(d.q, m);
  const NormalEdgeField s_psi = skew_grad_tilde(d.psi, m);
  const NormalEdgeField s_q = skew_grad_tilde(d.q, m);

  NormalEdgeField curl_arg(m.n_edges()), div_arg(m.n_edges());
  EdgeScalar tri(m.n_edges());
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    curl_arg[e] = qe[e] * g_psi[e] - psi_e[e] * g_q[e];
    div_arg[e] = psi_e[e] * s_q[e] - qe[e] * s_psi[e];
    tri[e] = s_q[e] * g_psi[e] - s_psi[e] * g_q[e];
  }
  CellField six = vertex_to_cell(curl_normal(curl_arg, m), m);
  six += div_normal(div_arg, m);
  t.dzeta += (1.0 / 6.0) * six;
  t.dzeta += (1.0 / 3.0) * edge_to_cell(tri, m);
  return t;
}

inline Tendency tendency(Scheme s, const Diagnostics& d, const DualMesh& m,
                         const BoundaryStencil* stencil = nullptr) {
  return s == Scheme::energy ? tendency_energy(d, m, stencil)
                             : tendency_energy_enstrophy(d, m, stencil);
}

/// Σ_i (Φ dφ − ψ dζ − χ dγ)|A_i|.
inline double energy_rate(const Diagnostics& d, const Tendency& t,
                          const DualMesh& m) {
  return inner_product(d.Phi, t.dphi, m) - inner_product(d.psi, t.dzeta, m) -
         inner_product(d.chi, t.dgamma, m);
}

/// Σ_i (−½q² dφ + q dζ)|A_i|.
inline double enstrophy_rate(const Diagnostics& d, const Tendency& t,
                             const DualMesh& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.n_cells(); ++i)
    s += (-0.5 * d.q[i] * d.q[i] * t.dphi[i] + d.q[i] * t.dzeta[i]) *
         m.cell_area[i];
  return s;
}

/// Predicted dZ/dt under the energy-conserving scheme:
/// Σ_e q̂_e [∇⊥q̃]_e [∇(−ψ)]_e A_e.
inline double enstrophy_residual_scheme1(const Diagnostics& d,
                                         const DualMesh& m) {
  const NormalEdgeField s_q = skew_grad_tilde(d.q, m);
  const NormalEdgeField g_psi = grad_cell(d.psi, m);
  double s = 0.0;
  for (std::size_t e = 0; e < m.n_edges(); ++e)
    s -= d.q_edge[e] * s_q[e] * g_psi[e] * m.diamond_area[e];
  return s;
}

/// Discrete functional derivatives (δ/δφ, δ/δζ, δ/δγ) of a functional.
struct Derivatives {
  CellField dphi;
  CellField dzeta;
  CellField dgamma;
};

/// δH = (Φ, −ψ, −χ).
inline Derivatives energy_derivatives(const Diagnostics& d) {
  return {d.Phi, -d.psi, -d.chi};
}

/// δZ = (−½q², q, 0) for Z = Σ ½φq²|A|.
inline Derivatives enstrophy_derivatives(const Diagnostics& d) {
  CellField dphi(d.q.size());
  for (std::size_t i = 0; i < dphi.size(); ++i) dphi[i] = -0.5 * d.q[i] * d.q[i];
  return {dphi, d.q, CellField(d.q.size())};
}

struct BracketComponents {
  double zeta_zeta = 0.0;
  double gamma_gamma = 0.0;
  double phi_zeta_gamma = 0.0;

  double total() const { return zeta_zeta + gamma_gamma + phi_zeta_gamma; }
};

/// The three components of the energy-conserving Poisson bracket, with
/// q̂ the edge potential vorticity.
inline BracketComponents bracket_components(const Derivatives& F,
                                            const Derivatives& H,
                                            const EdgeScalar& q_edge,
                                            const DualMesh& m) {
  BracketComponents b;
  const EdgeScalar jz = jacobian_h(F.dzeta, H.dzeta, m);
  const EdgeScalar jg = jacobian_h(F.dgamma, H.dgamma, m);
  const NormalEdgeField gfp = grad_cell(F.dphi, m), ghp = grad_cell(H.dphi, m);
  const NormalEdgeField gfz = grad_cell(F.dzeta, m), ghz = grad_cell(H.dzeta, m);
  const NormalEdgeField gfg = grad_cell(F.dgamma, m), ghg = grad_cell(H.dgamma, m);
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    const double a = m.diamond_area[e];
    b.zeta_zeta += q_edge[e] * jz[e] * a;
    b.gamma_gamma += q_edge[e] * jg[e] * a;
    b.phi_zeta_gamma +=
        2.0 * (q_edge[e] * (gfg[e] * ghz[e] - ghg[e] * gfz[e]) +
               (gfg[e] * ghp[e] - ghg[e] * gfp[e])) *
        a;
  }
  return b;
}

/// T(w, a, b) = Σ_e ŵ_e [∇⊥ã]_e [∇b]_e A_e.
inline double trilinear_term(const CellField& w, const CellField& a,
                             const CellField& b, const DualMesh& m) {
  const EdgeScalar we = cell_to_edge(w, m);
  const NormalEdgeField sa = skew_grad_tilde(a, m);
  const NormalEdgeField gb = grad_cell(b, m);
  double s = 0.0;
  for (std::size_t e = 0; e < m.n_edges(); ++e)
    s += we[e] * sa[e] * gb[e] * m.diamond_area[e];
  return s;
}

/// Trilinear ζζζ bracket {F, H, Z}: the cyclic permutations of T minus the
/// anticyclic ones, divided by three.
inline double trilinear_bracket(const Derivatives& F, const Derivatives& H,
                                const Derivatives& Z, const DualMesh& m) {
  const CellField &f = F.dzeta, &h = H.dzeta, &z = Z.dzeta;
  return (trilinear_term(z, f, h, m) + trilinear_term(h, z, f, m) +
          trilinear_term(f, h, z, m) - trilinear_term(z, h, f, m) -
          trilinear_term(h, f, z, m) - trilinear_term(f, z, h, m)) /
         3.0;
}

/// Bracket of the energy-enstrophy scheme: the trilinear ζζζ part replaces
/// the ζζ component.
inline double bracket_energy_enstrophy(const Derivatives& F,
                                       const Derivatives& H,
                                       const Derivatives& Z,
                                       const EdgeScalar& q_edge,
                                       const DualMesh& m) {
  const BracketComponents b = bracket_components(F, H, q_edge, m);
  return trilinear_bracket(F, H, Z, m) + b.gamma_gamma + b.phi_zeta_gamma;
}

}  // namespace hamswe
