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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "hamswe/dynamics.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/operators.hpp"
#include "hamswe/random.hpp"

namespace hamswe {

/// Worst relative defect of one discrete identity over all random sets.
struct IdentityResult {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool passed() const { return defect <= tolerance; }
};

struct CalculusReport {
  std::vector<IdentityResult> identities;
  bool ok() const {
    return std::all_of(identities.begin(), identities.end(),
                       [](const IdentityResult& r) { return r.passed(); });
  }
  const IdentityResult* find(const std::string& name) const {
    for (const auto& r : identities)
      if (r.name == name) return &r;
    return nullptr;
  }
};

namespace detail {

template <class Location>
Field<Location> abs_field(const Field<Location>& f) {
  Field<Location> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::abs(f[k]);
  return out;
}

/// |a − b| over the given scale, with NaN mapped to infinity.
inline double relative(double a, double b, double scale) {
  const double r = std::abs(a - b) / (scale > 0.0 ? scale : 1.0);
  return std::isnan(r) ? INFINITY : r;
}

template <class Location>
double max_abs(const Field<Location>& f) {
  double s = 0.0;
  for (double x : f) s = std::max(s, std::abs(x));
  return s;
}

/// max |curl u| relative to the largest Σ|u_e d_e|/A_ν.
inline double curl_defect(const NormalEdgeField& u, const DualMesh& m) {
  return max_abs(curl_normal(u, m)) /
         std::max(max_abs(curl_normal(abs_field(u), m)), 1e-300);
}

/// Largest Σ|u_e l_e|/A_i.
inline double div_scale(const NormalEdgeField& u, const DualMesh& m) {
  double scale = 0.0;
  for (std::size_t i = 0; i < m.n_cells(); ++i) {
    double s = 0.0;
    for (const Incidence& ei : m.edges_of_cell[i])
      s += std::abs(u[ei.index]) * m.primal_length[ei.index];
    scale = std::max(scale, s / m.cell_area[i]);
  }
  return std::max(scale, 1e-300);
}

inline double div_defect(const NormalEdgeField& u, const DualMesh& m) {
  return max_abs(div_normal(u, m)) / div_scale(u, m);
}

inline double abs_boundary_flux(const EdgeScalar& w, const EdgeScalar& u,
                                const DualMesh& m) {
  double s = 0.0;
  for (std::size_t e = 0; e < m.n_edges(); ++e)
    if (m.is_boundary_edge(e)) s += std::abs(w[e] * u[e]) * m.dual_length[e];
  return 0.5 * s;
}

inline Derivatives random_derivatives(Lcg64& rng, std::size_t n) {
  return {rng.field<location::Cell>(n), rng.field<location::Cell>(n),
          rng.field<location::Cell>(n)};
}

inline double trilinear_scale(const Derivatives& F, const Derivatives& H,
                              const Derivatives& Z, const DualMesh& m) {
  const CellField &f = F.dzeta, &h = H.dzeta, &z = Z.dzeta;
  return std::abs(trilinear_term(z, f, h, m)) + std::abs(trilinear_term(h, z, f, m)) +
         std::abs(trilinear_term(f, h, z, m)) + std::abs(trilinear_term(z, h, f, m)) +
         std::abs(trilinear_term(h, f, z, m)) + std::abs(trilinear_term(f, z, h, m));
}

}  // namespace detail

/// Adjoint, integration-by-parts and null-space identities of the discrete
/// operators, plus bracket antisymmetry, on `sets` seeded random field sets.
/// Bounded meshes include the boundary sums.
inline CalculusReport verify_calculus(const DualMesh& m, std::uint64_t seed,
                                      std::size_t sets = 20) {
  using detail::relative;
  const std::size_t nc = m.n_cells(), nv = m.n_vertices(), ne = m.n_edges();
  CalculusReport rep;
  auto add = [&](const std::string& name, double tol) {
    rep.identities.push_back({name, 0.0, tol});
  };
  const std::size_t k_adj_ce = 0, k_adj_cv = 1, k_grad = 2, k_sg = 3, k_sgt = 4,
                    k_gradt = 5, k_curlgrad = 6, k_divsgt = 7, k_lap = 8,
                    k_skew = 9, k_skew2 = 10, k_tri = 11;
  add("adjoint cell-edge", 1e-12);
  add("adjoint cell-vertex", 1e-12);
  add("parts grad", 1e-12);
  add("parts skew-grad cell", 1e-12);
  add("parts skew-grad vertex", 1e-12);
  add("parts grad vertex", 1e-12);
  add("curl grad", 1e-13);
  add("div skew-grad", 1e-13);
  add("laplacian factorizations", 1e-13);
  add("bracket skew-symmetry", 1e-13);
  add("energy-enstrophy bracket skew-symmetry", 1e-13);
  add("trilinear coincident arguments", 1e-13);
  auto bump = [&](std::size_t k, double d) {
    double& w = rep.identities[k].defect;
    w = std::max(w, std::isnan(d) ? INFINITY : d);
  };

  Lcg64 rng(seed);
  const EdgeScalar zero_boundary(ne);
  for (std::size_t set = 0; set < sets; ++set) {
    const CellField psi = rng.field<location::Cell>(nc);
    const CellField a = rng.field<location::Cell>(nc);
    const VertexField pv = rng.field<location::Vertex>(nv);
    const VertexField w = rng.field<location::Vertex>(nv);
    const NormalEdgeField u = rng.field<location::NormalEdge>(ne);
    const TangentialEdgeField v = rng.field<location::TangentialEdge>(ne);
    const EdgeScalar we = rng.field<location::TangentialEdge>(ne);
    const EdgeScalar b = rng.field<location::TangentialEdge>(ne);

    bump(k_adj_ce, relative(inner_product(cell_to_edge(psi, m), we, m),
                            inner_product(psi, edge_to_cell(we, m), m),
                            inner_product(cell_to_edge(detail::abs_field(psi), m),
                                          detail::abs_field(we), m)));
    bump(k_adj_cv, relative(inner_product(cell_to_vertex(psi, m), w, m),
                            inner_product(psi, vertex_to_cell(w, m), m),
                            inner_product(cell_to_vertex(detail::abs_field(psi), m),
                                          detail::abs_field(w), m)));

    const NormalEdgeField g = grad_cell(psi, m);
    bump(k_grad, relative(inner_product(u, g, m),
                          -0.5 * inner_product(div_normal(u, m), psi, m),
                          inner_product(detail::abs_field(u), detail::abs_field(g), m)));
    const TangentialEdgeField sg = skew_grad_cell(psi, m);
    bump(k_sg, relative(inner_product(v, sg, m),
                        -0.5 * inner_product(curl_tangential(v, m), psi, m),
                        inner_product(detail::abs_field(v), detail::abs_field(sg), m)));

    const EdgeScalar& bb = m.periodic ? zero_boundary : b;
    const NormalEdgeField sgt = skew_grad_vertex(pv, bb, m);
    const auto u_as_scalar = relabel<location::TangentialEdge>(u);
    bump(k_sgt, relative(inner_product(u, sgt, m),
                         -0.5 * inner_product(curl_normal(u, m), pv, m) -
                             boundary_flux(bb, u, m),
                         inner_product(detail::abs_field(u), detail::abs_field(sgt), m) +
                             detail::abs_boundary_flux(bb, u_as_scalar, m)));
    const TangentialEdgeField gt = grad_vertex(pv, bb, m);
    bump(k_gradt, relative(inner_product(v, gt, m),
                           -0.5 * inner_product(div_tangential(v, m), pv, m) +
                               boundary_flux(bb, v, m),
                           inner_product(detail::abs_field(v), detail::abs_field(gt), m) +
                               detail::abs_boundary_flux(bb, v, m)));

    bump(k_curlgrad, detail::curl_defect(g, m));
    bump(k_divsgt, detail::div_defect(skew_grad_vertex(pv, zero_boundary, m), m));

    const CellField l1 = laplacian_cell(psi, m);
    const CellField l2 = curl_tangential(skew_grad_cell(psi, m), m);
    bump(k_lap, detail::max_abs(l1 - l2) / detail::div_scale(g, m));

    const Derivatives F = detail::random_derivatives(rng, nc);
    const Derivatives H = detail::random_derivatives(rng, nc);
    const Derivatives Z = detail::random_derivatives(rng, nc);
    const EdgeScalar q_edge = cell_to_edge(a, m);
    const BracketComponents fh = bracket_components(F, H, q_edge, m);
    const BracketComponents hf = bracket_components(H, F, q_edge, m);
    const BracketComponents ff = bracket_components(F, F, q_edge, m);
    for (auto [x, y, z] : {std::tuple{fh.zeta_zeta, hf.zeta_zeta, ff.zeta_zeta},
                           std::tuple{fh.gamma_gamma, hf.gamma_gamma, ff.gamma_gamma},
                           std::tuple{fh.phi_zeta_gamma, hf.phi_zeta_gamma,
                                      ff.phi_zeta_gamma}}) {
      const double scale = std::abs(x) + std::abs(y);
      bump(k_skew, relative(x, -y, scale));
      bump(k_skew, std::abs(z) / std::max(scale, 1e-300));
    }
    const double e1 = bracket_energy_enstrophy(F, H, Z, q_edge, m);
    const double e2 = bracket_energy_enstrophy(H, F, Z, q_edge, m);
    bump(k_skew2, relative(e1, -e2, std::abs(e1) + std::abs(e2)));

    for (auto [x, y, z] : {std::tuple{&F, &F, &Z}, std::tuple{&F, &H, &H},
                           std::tuple{&Z, &H, &Z}}) {
      const double t = trilinear_bracket(*x, *y, *z, m);
      bump(k_tri, std::abs(t) /
                      std::max(detail::trilinear_scale(*x, *y, *z, m), 1e-300));
    }
  }
  return rep;
}

}  // namespace hamswe
