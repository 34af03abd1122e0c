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

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hamswe/error.hpp"
#include "hamswe/fields.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/minres.hpp"
#include "hamswe/operators.hpp"

namespace hamswe {

/// Prognostic variables: thickness, vorticity, divergence.
struct State {
  CellField phi;
  CellField zeta;
  CellField gamma;
};

struct PhysicsConfig {
  double g = 1.0;
  CellField f;  // Coriolis parameter, sampled at cell centers
  CellField b;  // bottom topography

  static PhysicsConfig uniform(const DualMesh& m, double f0, double g) {
    PhysicsConfig c;
    c.g = g;
    c.f = CellField(m.n_cells(), f0);
    c.b = CellField(m.n_cells(), 0.0);
    return c;
  }
};

struct SolveStats {
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> history;
  bool indefinite = false;
};

struct Diagnostics {
  CellField psi;
  CellField chi;
  CellField Phi;
  CellField q;
  EdgeScalar q_edge;
  VertexField q_vertex;
  EdgeScalar phi_edge;
  SolveStats stats;
};

struct SolveOptions {
  double tol = 1e-11;
  /// 0 selects 50·√(unknowns) + 1000.
  std::size_t max_iterations = 0;
  /// Warm start; ignored unless both fields have the right length.
  const CellField* psi_guess = nullptr;
  const CellField* chi_guess = nullptr;
};

inline void check_state(const State& s, const DualMesh& m) {
  const std::size_t n = m.n_cells();
  if (s.phi.size() != n || s.zeta.size() != n || s.gamma.size() != n)
    throw InvalidArgument("state fields must have one value per cell");
  for (std::size_t i = 0; i < n; ++i)
    if (!(s.phi[i] > 0.0))
      throw StateError("nonpositive thickness at cell " + std::to_string(i),
                       i);
}

inline void check_physics(const PhysicsConfig& c, const DualMesh& m) {
  if (!(c.g > 0.0)) throw InvalidArgument("gravity must be positive");
  if (c.f.size() != m.n_cells() || c.b.size() != m.n_cells())
    throw InvalidArgument("Coriolis and topography need one value per cell");
}

/// Potential vorticity q = (f + ζ)/φ.
inline CellField compute_pv(const State& s, const PhysicsConfig& c,
                            const DualMesh& m) {
  check_state(s, m);
  check_physics(c, m);
  CellField q(m.n_cells());
  for (std::size_t i = 0; i < q.size(); ++i)
    q[i] = (c.f[i] + s.zeta[i]) / s.phi[i];
  return q;
}

/// Tangential gradient of the vertex remap of a cell field, with the edge
/// mean of the field as boundary value.
inline TangentialEdgeField grad_tilde(const CellField& a, const DualMesh& m) {
  return grad_vertex(cell_to_vertex(a, m), cell_to_edge(a, m), m);
}

/// Normal skew gradient of the vertex remap of a cell field.
inline NormalEdgeField skew_grad_tilde(const CellField& a, const DualMesh& m) {
  return relabel<location::NormalEdge>(-grad_tilde(a, m));
}

namespace detail {

inline EdgeScalar reciprocal(const EdgeScalar& phi_edge) {
  EdgeScalar k(phi_edge.size());
  for (std::size_t e = 0; e < k.size(); ++e) {
    if (!(phi_edge[e] > 0.0))
      throw InvalidArgument("edge thickness must be positive");
    k[e] = 1.0 / phi_edge[e];
  }
  return k;
}

}  // namespace detail

/// The coupled operator taking (ψ, χ) to (ζ, γ) for edge thickness φ̂.
inline std::pair<CellField, CellField> apply_A(const CellField& psi,
                                               const CellField& chi,
                                               const EdgeScalar& phi_edge,
                                               const DualMesh& m) {
  detail::require_size(psi, m.n_cells(), "apply_A");
  detail::require_size(chi, m.n_cells(), "apply_A");
  detail::require_size(phi_edge, m.n_edges(), "apply_A");
  const EdgeScalar k = detail::reciprocal(phi_edge);

  const NormalEdgeField g_chi = grad_cell(chi, m);
  const TangentialEdgeField sg_psi = skew_grad_cell(psi, m);

  CellField zeta = curl_tangential(scale_by(k, sg_psi), m);
  CellField cross_z = vertex_to_cell(curl_normal(scale_by(k, g_chi), m), m);
  cross_z += curl_tangential(scale_by(k, grad_tilde(chi, m)), m);
  zeta += 0.5 * cross_z;

  CellField gamma = div_normal(scale_by(k, g_chi), m);
  CellField cross_g = div_normal(scale_by(k, skew_grad_tilde(psi, m)), m);
  cross_g += vertex_to_cell(div_tangential(scale_by(k, sg_psi), m), m);
  gamma += 0.5 * cross_g;
  return {std::move(zeta), std::move(gamma)};
}

/// Gauge-fixed unknown layout: ψ is pinned to zero on boundary cells
/// (bounded) or at cell 0 (periodic); χ is pinned at cell 0.
class EllipticSystem {
 public:
  EllipticSystem(const DualMesh& m, EdgeScalar phi_edge)
      : mesh_(&m), phi_edge_(std::move(phi_edge)) {
    for (std::size_t i = 0; i < m.n_cells(); ++i) {
      const bool pinned = m.periodic ? i == 0 : m.is_boundary_cell(i);
      if (!pinned) psi_cells_.push_back(i);
      if (i != 0) chi_cells_.push_back(i);
    }
    const EdgeScalar k = detail::reciprocal(phi_edge_);
    std::vector<double> stiff(m.n_cells(), 0.0);
    for (std::size_t e = 0; e < m.n_edges(); ++e)
      for (const Incidence& c : m.cells_of_edge[e])
        stiff[c.index] += k[e] * m.primal_length[e] / m.dual_length[e];
    diag_.resize(static_cast<Eigen::Index>(size()));
    for (std::size_t r = 0; r < psi_cells_.size(); ++r)
      diag_[static_cast<Eigen::Index>(r)] = stiff[psi_cells_[r]];
    for (std::size_t r = 0; r < chi_cells_.size(); ++r)
      diag_[static_cast<Eigen::Index>(psi_cells_.size() + r)] =
          stiff[chi_cells_[r]];
  }

  std::size_t size() const { return psi_cells_.size() + chi_cells_.size(); }
  const EdgeScalar& phi_edge() const { return phi_edge_; }

  std::pair<CellField, CellField> expand(const Eigen::VectorXd& x) const {
    CellField psi(mesh_->n_cells()), chi(mesh_->n_cells());
    const std::size_t np = psi_cells_.size();
    for (std::size_t r = 0; r < np; ++r)
      psi[psi_cells_[r]] = x[static_cast<Eigen::Index>(r)];
    for (std::size_t r = 0; r < chi_cells_.size(); ++r)
      chi[chi_cells_[r]] = x[static_cast<Eigen::Index>(np + r)];
    return {std::move(psi), std::move(chi)};
  }

  /// Area-weighted restriction of a pair of cell fields to the free rows.
  Eigen::VectorXd restrict(const CellField& a, const CellField& b) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
    const std::size_t np = psi_cells_.size();
    for (std::size_t r = 0; r < np; ++r) {
      const std::size_t i = psi_cells_[r];
      out[static_cast<Eigen::Index>(r)] = a[i] * mesh_->cell_area[i];
    }
    for (std::size_t r = 0; r < chi_cells_.size(); ++r) {
      const std::size_t i = chi_cells_[r];
      out[static_cast<Eigen::Index>(np + r)] = b[i] * mesh_->cell_area[i];
    }
    return out;
  }

  /// Gauge values: ψ and χ with the pinned entries subtracted out.
  Eigen::VectorXd gather(const CellField& psi, const CellField& chi) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(size()));
    const std::size_t np = psi_cells_.size();
    for (std::size_t r = 0; r < np; ++r)
      out[static_cast<Eigen::Index>(r)] = psi[psi_cells_[r]];
    for (std::size_t r = 0; r < chi_cells_.size(); ++r)
      out[static_cast<Eigen::Index>(np + r)] = chi[chi_cells_[r]] - chi[0];
    return out;
  }

  /// Symmetric reduced operator.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
    auto [psi, chi] = expand(x);
    auto [zi, gi] = apply_A(psi, chi, phi_edge_, *mesh_);
    out = restrict(zi, gi);
  }

  void precondition(const Eigen::VectorXd& r, Eigen::VectorXd& out) const {
    out = r.cwiseQuotient(diag_);
  }

 private:
  const DualMesh* mesh_;
  EdgeScalar phi_edge_;
  std::vector<std::size_t> psi_cells_;
  std::vector<std::size_t> chi_cells_;
  Eigen::VectorXd diag_;
};

/// Solves A(ψ, χ) = (ζ, γ) under the gauge of EllipticSystem.
inline std::pair<CellField, CellField> solve_A(const CellField& zeta,
                                               const CellField& gamma,
                                               const EdgeScalar& phi_edge,
                                               const DualMesh& m,
                                               const SolveOptions& opt,
                                               SolveStats* stats = nullptr) {
  if (!(opt.tol > 0.0)) throw InvalidArgument("solver tolerance must be > 0");
  const EllipticSystem sys(m, phi_edge);
  const Eigen::VectorXd rhs = sys.restrict(zeta, gamma);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  if (opt.psi_guess && opt.chi_guess && opt.psi_guess->size() == m.n_cells() &&
      opt.chi_guess->size() == m.n_cells())
    x = sys.gather(*opt.psi_guess, *opt.chi_guess);
  const std::size_t cap =
      opt.max_iterations
          ? opt.max_iterations
          : static_cast<std::size_t>(
                50.0 * std::sqrt(static_cast<double>(sys.size())) + 1000.0);
  const MinresResult res = minres(
      [&](const Eigen::VectorXd& v, Eigen::VectorXd& o) { sys.apply(v, o); },
      [&](const Eigen::VectorXd& v, Eigen::VectorXd& o) {
        sys.precondition(v, o);
      },
      rhs, x, opt.tol, cap);
  if (!res.converged)
    throw SolverFailure("elliptic solve did not reach relative residual " +
                            std::to_string(opt.tol) + " in " +
                            std::to_string(res.iterations) + " iterations",
                        res.history);
  if (stats) {
    stats->iterations = res.iterations;
    stats->residual = res.residual;
    stats->history = res.history;
    stats->indefinite = res.indefinite;
  }
  return sys.expand(x);
}

/// Kinetic-energy density per edge (without the diamond area).
inline EdgeScalar kinetic_edge_terms(const CellField& psi, const CellField& chi,
                                     const DualMesh& m) {
  const NormalEdgeField g_chi = grad_cell(chi, m);
  const TangentialEdgeField sg_psi = skew_grad_cell(psi, m);
  const NormalEdgeField sgt_psi = skew_grad_tilde(psi, m);
  const TangentialEdgeField gt_chi = grad_tilde(chi, m);
  EdgeScalar k(m.n_edges());
  for (std::size_t e = 0; e < m.n_edges(); ++e)
    k[e] = sg_psi[e] * sg_psi[e] + g_chi[e] * g_chi[e] +
           sgt_psi[e] * g_chi[e] + sg_psi[e] * gt_chi[e];
  return k;
}

/// Φ: the edge kinetic term φ̂⁻²(…) remapped to cells, plus g(φ + b).
inline CellField compute_geopotential(const State& s, const CellField& psi,
                                      const CellField& chi,
                                      const EdgeScalar& phi_edge,
                                      const PhysicsConfig& c,
                                      const DualMesh& m) {
  EdgeScalar k = kinetic_edge_terms(psi, chi, m);
  for (std::size_t e = 0; e < k.size(); ++e)
    k[e] /= phi_edge[e] * phi_edge[e];
  CellField Phi = edge_to_cell(k, m);
  for (std::size_t i = 0; i < Phi.size(); ++i)
    Phi[i] += c.g * (s.phi[i] + c.b[i]);
  return Phi;
}

/// Recovers every diagnostic field from the prognostic state.
inline Diagnostics solve_psi_chi(const State& s, const PhysicsConfig& c,
                                 const DualMesh& m,
                                 const SolveOptions& opt = {}) {
  Diagnostics d;
  d.q = compute_pv(s, c, m);
  d.q_edge = cell_to_edge(d.q, m);
  d.q_vertex = cell_to_vertex(d.q, m);
  d.phi_edge = cell_to_edge(s.phi, m);
  std::tie(d.psi, d.chi) = solve_A(s.zeta, s.gamma, d.phi_edge, m, opt, &d.stats);
  d.Phi = compute_geopotential(s, d.psi, d.chi, d.phi_edge, c, m);
  return d;
}

/// Discrete Hamiltonian: kinetic part on edges plus potential part on cells.
inline double total_energy(const State& s, const CellField& psi,
                           const CellField& chi, const PhysicsConfig& c,
                           const DualMesh& m) {
  const EdgeScalar phi_edge = cell_to_edge(s.phi, m);
  const EdgeScalar k = kinetic_edge_terms(psi, chi, m);
  double kin = 0.0;
  for (std::size_t e = 0; e < k.size(); ++e)
    kin += k[e] / phi_edge[e] * m.diamond_area[e];
  double pot = 0.0;
  for (std::size_t i = 0; i < m.n_cells(); ++i) {
    const double h = s.phi[i] + c.b[i];
    pot += 0.5 * c.g * h * h * m.cell_area[i];
  }
  return kin + pot;
}

inline double total_energy(const State& s, const Diagnostics& d,
                           const PhysicsConfig& c, const DualMesh& m) {
  return total_energy(s, d.psi, d.chi, c, m);
}

/// Σ φ_i G(q_i) |A_i|.
inline double casimir(const State& s, const PhysicsConfig& c, const DualMesh& m,
                      const std::function<double(double)>& G) {
  const CellField q = compute_pv(s, c, m);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    sum += s.phi[i] * G(q[i]) * m.cell_area[i];
  return sum;
}

inline double mass(const State& s, const PhysicsConfig& c, const DualMesh& m) {
  return casimir(s, c, m, [](double) { return 1.0; });
}

inline double circulation(const State& s, const PhysicsConfig& c,
                          const DualMesh& m) {
  return casimir(s, c, m, [](double q) { return q; });
}

inline double potential_enstrophy(const State& s, const PhysicsConfig& c,
                                  const DualMesh& m) {
  return casimir(s, c, m, [](double q) { return 0.5 * q * q; });
}

}  // namespace hamswe
