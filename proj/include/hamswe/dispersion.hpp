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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hamswe/dynamics.hpp"
#include "hamswe/elliptic.hpp"
#include "hamswe/error.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/operators.hpp"

namespace hamswe {

/// Linearization about the rest state φ = φ̄, ζ = γ = 0, b = 0, f = f₀.
struct LinearizedSystem {
  double f0 = 1.0;
  double phibar = 1.0;
  double g = 1.0;
  const DualMesh* mesh = nullptr;
};

/// (dφ′, dζ, dγ) = (−φ̄γ, −f₀γ, f₀ζ − gΔφ′).
inline Tendency linear_tendency(const CellField& phi_p, const CellField& zeta,
                                const CellField& gamma,
                                const LinearizedSystem& sys) {
  const DualMesh& m = *sys.mesh;
  Tendency t;
  t.dphi = -sys.phibar * gamma;
  t.dzeta = -sys.f0 * gamma;
  t.dgamma = sys.f0 * zeta - sys.g * laplacian_cell(phi_p, m);
  return t;
}

namespace detail {

inline Eigen::VectorXd stack(const Tendency& t) {
  const auto n = static_cast<Eigen::Index>(t.dphi.size());
  Eigen::VectorXd v(3 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = t.dphi[static_cast<std::size_t>(i)];
    v[n + i] = t.dzeta[static_cast<std::size_t>(i)];
    v[2 * n + i] = t.dgamma[static_cast<std::size_t>(i)];
  }
  return v;
}

inline void require_periodic(const DualMesh& m) {
  if (!m.periodic)
    throw Unsupported("dispersion analysis needs a periodic mesh");
}

}  // namespace detail

/// Dense 3N×3N matrix of linear_tendency on stacked (φ′, ζ, γ).
inline Eigen::MatrixXd assemble_linear_generator(const LinearizedSystem& sys) {
  const std::size_t n = sys.mesh->n_cells();
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd G(3 * N, 3 * N);
  for (Eigen::Index col = 0; col < 3 * N; ++col) {
    CellField p(n), z(n), g(n);
    const std::size_t k = static_cast<std::size_t>(col % N);
    (col < N ? p : col < 2 * N ? z : g)[k] = 1.0;
    G.col(col) = detail::stack(linear_tendency(p, z, g, sys));
  }
  return G;
}

/// Eigenvalues of −Δ_h, ascending. −Δ_h is self-adjoint in the area
/// pairing, so the area-symmetrized matrix is used.
inline std::vector<double> laplacian_eigenvalues(const DualMesh& m) {
  const std::size_t n = m.n_cells();
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd S(N, N);
  for (std::size_t j = 0; j < n; ++j) {
    CellField e(n);
    e[j] = 1.0;
    const CellField col = laplacian_cell(e, m);
    for (std::size_t i = 0; i < n; ++i)
      S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          -col[i] * std::sqrt(m.cell_area[i] / m.cell_area[j]);
  }
  const Eigen::MatrixXd sym = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + N);
  std::sort(out.begin(), out.end());
  return out;
}

struct DispersionMode {
  std::size_t mode = 0;
  double lambda = 0.0;
  double omega_numeric = 0.0;
  double omega_zgrid = 0.0;
  /// |ω_numeric² − ω_zgrid²|.
  double abs_err = 0.0;
};

struct DispersionResult {
  std::vector<DispersionMode> modes;
  /// All generator eigenvalues.
  std::vector<std::complex<double>> eigenvalues;
  std::size_t zero_modes = 0;
  std::size_t expected_zero_modes = 0;
  double max_real_part = 0.0;
  double max_abs_err = 0.0;
};

namespace detail {

/// Matches the spectrum of `G` against N zero modes plus ±√(f₀² + gφ̄λ_k).
inline DispersionResult match_spectrum(Eigen::MatrixXd G,
                                       const std::vector<double>& lambdas,
                                       std::size_t zeros,
                                       const LinearizedSystem& sys) {
  // Diagonal similarity on the φ′ block so that the −φ̄γ and −gΔφ′
  // couplings have comparable size; the spectrum is unchanged.
  const auto N = static_cast<Eigen::Index>(zeros);
  const double lmax = lambdas.empty() ? 0.0 : std::max(0.0, lambdas.back());
  if (sys.phibar > 0.0 && sys.g * lmax > 0.0) {
    const double s = std::sqrt(sys.g * lmax / sys.phibar);
    G.topRows(N) *= s;
    G.leftCols(N) /= s;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(G, false);
  if (es.info() != Eigen::Success)
    throw Error("eigen-decomposition of the linear generator failed");
  DispersionResult r;
  const auto& ev = es.eigenvalues();
  std::vector<double> omega;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) scale = std::max(scale, std::abs(ev[k]));
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    r.eigenvalues.push_back(ev[k]);
    r.max_real_part = std::max(r.max_real_part, std::abs(ev[k].real()));
    omega.push_back(ev[k].imag());
  }
  std::sort(omega.begin(), omega.end());

  std::vector<double> omega_z;
  for (double l : lambdas)
    omega_z.push_back(
        std::sqrt(std::max(0.0, sys.f0 * sys.f0 + sys.g * sys.phibar * l)));
  std::vector<double> predicted(zeros, 0.0);
  for (double w : omega_z) {
    predicted.push_back(w);
    predicted.push_back(-w);
  }
  std::sort(predicted.begin(), predicted.end());

  const double zero_tol = 1e-6 * std::max(1.0, scale);
  for (double w : omega) r.zero_modes += std::abs(w) <= zero_tol;
  for (double w : predicted) r.expected_zero_modes += std::abs(w) <= zero_tol;

  // Positive branch, ascending: the last |λ| entries of each sorted list.
  std::vector<double> pos_num(omega.end() - static_cast<long>(lambdas.size()),
                              omega.end());
  std::vector<std::size_t> order(lambdas.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return omega_z[a] < omega_z[b]; });
  for (std::size_t k = 0; k < order.size(); ++k) {
    DispersionMode md;
    md.mode = k;
    md.lambda = lambdas[order[k]];
    md.omega_numeric = pos_num[k];
    md.omega_zgrid = omega_z[order[k]];
    md.abs_err = std::abs(md.omega_numeric * md.omega_numeric -
                          md.omega_zgrid * md.omega_zgrid);
    r.max_abs_err = std::max(r.max_abs_err, md.abs_err);
    r.modes.push_back(md);
  }
  // The negative branch and the zero branch must match as well.
  if (omega.size() == predicted.size())
    for (std::size_t k = 0; k < omega.size(); ++k)
      r.max_abs_err = std::max(
          r.max_abs_err, std::abs(omega[k] * omega[k] - predicted[k] * predicted[k]));
  return r;
}

}  // namespace detail

/// Spectrum of the assembled linear generator compared with the Z-grid
/// relation ω² = f₀² + gφ̄λ for the independently computed λ of −Δ_h.
inline DispersionResult dispersion_spectrum(const LinearizedSystem& sys) {
  detail::require_periodic(*sys.mesh);
  const std::size_t n = sys.mesh->n_cells();
  return detail::match_spectrum(assemble_linear_generator(sys),
                                laplacian_eigenvalues(*sys.mesh), n, sys);
}

/// Jacobian of a full scheme at the rest state, by Richardson-extrapolated
/// central differences, restricted to perturbations with zero-mean ζ and γ
/// (the subspace on which the gauge-fixed solve inverts the elliptic
/// operator). Coordinates: all N φ′ values, then ζ and γ at cells 1..N−1.
inline Eigen::MatrixXd linearize_scheme(Scheme scheme,
                                        const LinearizedSystem& sys,
                                        double eps = 1e-3,
                                        double solver_tol = 1e-13) {
  const DualMesh& m = *sys.mesh;
  detail::require_periodic(m);
  const std::size_t n = m.n_cells();
  const auto N = static_cast<Eigen::Index>(n);
  const Eigen::Index dim = 3 * N - 2;
  PhysicsConfig phys = PhysicsConfig::uniform(m, sys.f0, sys.g);
  SolveOptions opt;
  opt.tol = solver_tol;

  auto coords = [&](const Tendency& t) {
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < N; ++i) v[i] = t.dphi[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 1; i < N; ++i) {
      v[N + i - 1] = t.dzeta[static_cast<std::size_t>(i)];
      v[2 * N - 1 + i - 1] = t.dgamma[static_cast<std::size_t>(i)];
    }
    return v;
  };
  auto eval = [&](const State& s) {
    const Diagnostics d = solve_psi_chi(s, phys, m, opt);
    return coords(tendency(scheme, d, m));
  };
  auto central = [&](const State& dir, double h) {
    State plus{CellField(n, sys.phibar) + h * dir.phi, h * dir.zeta, h * dir.gamma};
    State minus{CellField(n, sys.phibar) - h * dir.phi, -h * dir.zeta, -h * dir.gamma};
    return Eigen::VectorXd((eval(plus) - eval(minus)) / (2.0 * h));
  };

  Eigen::MatrixXd J(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    State dir{CellField(n), CellField(n), CellField(n)};
    if (c < N) {
      dir.phi[static_cast<std::size_t>(c)] = 1.0;
    } else {
      const bool is_zeta = c < 2 * N - 1;
      const std::size_t k = static_cast<std::size_t>(is_zeta ? c - N + 1 : c - 2 * N + 2);
      CellField& f = is_zeta ? dir.zeta : dir.gamma;
      f[k] = 1.0;
      f[0] = -m.cell_area[k] / m.cell_area[0];
    }
    J.col(c) = (4.0 * central(dir, 0.5 * eps) - central(dir, eps)) / 3.0;
  }
  return J;
}

/// Spectrum of a linearized full scheme on the zero-mean subspace, matched
/// against the Z-grid relation. The λ = 0 inertial pair needs mean ζ and γ
/// and is absent there.
inline DispersionResult scheme_dispersion_spectrum(Scheme scheme,
                                                   const LinearizedSystem& sys) {
  detail::require_periodic(*sys.mesh);
  std::vector<double> lambdas = laplacian_eigenvalues(*sys.mesh);
  lambdas.erase(lambdas.begin());
  return detail::match_spectrum(linearize_scheme(scheme, sys), lambdas,
                                sys.mesh->n_cells(), sys);
}

}  // namespace hamswe
