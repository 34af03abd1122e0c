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
#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hamswe/dynamics.hpp"
#include "hamswe/elliptic.hpp"
#include "hamswe/error.hpp"
#include "hamswe/mesh.hpp"

namespace hamswe {

enum class Integrator { rk4, implicit_midpoint };

struct RunConfig {
  Scheme scheme = Scheme::energy;
  Integrator integrator = Integrator::rk4;
  double dt = 1e-3;
  std::size_t n_steps = 1;
  double solver_tol = 1e-11;
  /// Elliptic iteration cap; 0 selects the size-based default.
  std::size_t max_iterations = 0;
  std::size_t output_every = 1;
  /// Fixed-point controls of the implicit midpoint stage equation.
  double fixed_point_tol = 1e-12;
  std::size_t fixed_point_max = 50;
  PhysicsConfig physics;

  void validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(solver_tol > 0.0 && solver_tol <= 1e-6))
      throw ConfigError("solver tolerance must lie in (0, 1e-6]");
    if (output_every == 0) throw ConfigError("output_every must be >= 1");
  }
};

struct SeriesRow {
  double t = 0.0;
  double mass = 0.0;
  double circulation = 0.0;
  double energy = 0.0;
  double enstrophy = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
};

using ConservationSeries = std::vector<SeriesRow>;

/// State snapshot handed to run() sinks.
struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  const State* state = nullptr;
  const Diagnostics* diag = nullptr;
};

/// ζ and γ from (ψ, χ) through the forward elliptic operator with φ̂ from φ.
inline State initialize_from_velocity_potentials(const CellField& psi0,
                                                 const CellField& chi0,
                                                 const CellField& phi0,
                                                 const DualMesh& m) {
  State s;
  s.phi = phi0;
  std::tie(s.zeta, s.gamma) = apply_A(psi0, chi0, cell_to_edge(phi0, m), m);
  return s;
}

/// State built from (ψ, χ = 0) whose thickness satisfies the nonlinear
/// balance dγ/dt = 0. Iterates φ ← φ + g⁻¹Δ⁻¹(dγ/dt) from `phi0`, keeping the
/// mean thickness. Throws SolverFailure with the residual history if
/// ‖dγ/dt‖ ≤ tol·‖gΔφ‖ is not reached.
inline State balanced_state(const CellField& psi, const CellField& phi0,
                            const PhysicsConfig& c, const DualMesh& m,
                            double tol = 1e-12, std::size_t max_iterations = 50) {
  const std::size_t n = m.n_cells();
  const BoundaryStencil stencil = BoundaryStencil::build(m);
  const CellField zero(n);
  const EdgeScalar unit(m.n_edges(), 1.0);
  auto mean = [&](const CellField& f) {
    return inner_product(f, CellField(n, 1.0), m) / m.total_area();
  };
  auto norm = [&](const CellField& f) { return std::sqrt(inner_product(f, f, m)); };
  SolveOptions opt;
  opt.tol = 1e-13;
  CellField phi = phi0;
  std::vector<double> history;
  for (std::size_t it = 0; it <= max_iterations; ++it) {
    State s = initialize_from_velocity_potentials(psi, zero, phi, m);
    const Diagnostics d = solve_psi_chi(s, c, m, opt);
    CellField dg = tendency(Scheme::energy, d, m, &stencil).dgamma;
    const double scale = c.g * norm(laplacian_cell(phi, m));
    const double r = norm(dg) / (scale > 0.0 ? scale : 1.0);
    history.push_back(r);
    if (r <= tol) return s;
    dg -= CellField(n, mean(dg));
    CellField lap_inv = solve_A(zero, dg, unit, m, opt).second;
    lap_inv -= CellField(n, mean(lap_inv));
    phi += (1.0 / c.g) * lap_inv;
    check_state({phi, zero, zero}, m);
  }
  throw SolverFailure("nonlinear balance iteration did not converge", history);
}

/// Advances states while warm-starting each elliptic solve from the last one.
class Stepper {
 public:
  Stepper(const DualMesh& m, RunConfig cfg)
      : mesh_(m), cfg_(std::move(cfg)), stencil_(BoundaryStencil::build(m)) {
    cfg_.validate();
  }

  const RunConfig& config() const { return cfg_; }
  const BoundaryStencil& stencil() const { return stencil_; }

  Diagnostics diagnose(const State& s) {
    SolveOptions opt;
    opt.tol = cfg_.solver_tol;
    opt.max_iterations = cfg_.max_iterations;
    if (have_guess_) {
      opt.psi_guess = &psi_guess_;
      opt.chi_guess = &chi_guess_;
    }
    Diagnostics d = solve_psi_chi(s, cfg_.physics, mesh_, opt);
    psi_guess_ = d.psi;
    chi_guess_ = d.chi;
    have_guess_ = true;
    last_iterations_ += d.stats.iterations;
    last_residual_ = std::max(last_residual_, d.stats.residual);
    return d;
  }

  Tendency rhs(const State& s) {
    return tendency(cfg_.scheme, diagnose(s), mesh_, &stencil_);
  }

  /// One step. Iteration count and worst residual of the stage solves are
  /// available afterwards.
  State step(const State& s) {
    check_state(s, mesh_);
    last_iterations_ = 0;
    last_residual_ = 0.0;
    State next;
    try {
      next = cfg_.integrator == Integrator::rk4 ? rk4(s) : midpoint(s);
    } catch (const StabilityError&) {
      throw;
    } catch (const StateError& e) {
      throw StabilityError("thickness became nonpositive at cell " +
                               std::to_string(e.cell()) +
                               " within a stage; reduce dt",
                           e.cell());
    }
    for (std::size_t i = 0; i < next.phi.size(); ++i)
      if (!(next.phi[i] > 0.0))
        throw StabilityError("thickness became nonpositive at cell " +
                                 std::to_string(i) + "; reduce dt",
                             i);
    return next;
  }

  std::size_t last_iterations() const { return last_iterations_; }
  double last_residual() const { return last_residual_; }
  std::size_t last_fixed_point_iterations() const { return last_fp_; }

 private:
  static State axpy(const State& s, double a, const Tendency& t) {
    return {s.phi + a * t.dphi, s.zeta + a * t.dzeta, s.gamma + a * t.dgamma};
  }

  State rk4(const State& s) {
    const double h = cfg_.dt;
    const Tendency k1 = rhs(s);
    const Tendency k2 = rhs(axpy(s, 0.5 * h, k1));
    const Tendency k3 = rhs(axpy(s, 0.5 * h, k2));
    const Tendency k4 = rhs(axpy(s, h, k3));
    State out = s;
    for (std::size_t i = 0; i < s.phi.size(); ++i) {
      out.phi[i] += h / 6.0 *
                    (k1.dphi[i] + 2.0 * k2.dphi[i] + 2.0 * k3.dphi[i] + k4.dphi[i]);
      out.zeta[i] += h / 6.0 * (k1.dzeta[i] + 2.0 * k2.dzeta[i] +
                                2.0 * k3.dzeta[i] + k4.dzeta[i]);
      out.gamma[i] += h / 6.0 * (k1.dgamma[i] + 2.0 * k2.dgamma[i] +
                                 2.0 * k3.dgamma[i] + k4.dgamma[i]);
    }
    return out;
  }

  // y1 = y0 + h f((y0 + y1)/2), iterated from the explicit Euler guess.
  State midpoint(const State& s) {
    const double h = cfg_.dt;
    State next = axpy(s, h, rhs(s));
    last_fp_ = 0;
    for (std::size_t it = 0; it < cfg_.fixed_point_max; ++it) {
      ++last_fp_;
      State mid = {0.5 * (s.phi + next.phi), 0.5 * (s.zeta + next.zeta),
                   0.5 * (s.gamma + next.gamma)};
      check_state(mid, mesh_);
      State trial = axpy(s, h, rhs(mid));
      double diff = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < s.phi.size(); ++i) {
        diff = std::max({diff, std::abs(trial.phi[i] - next.phi[i]),
                         std::abs(trial.zeta[i] - next.zeta[i]),
                         std::abs(trial.gamma[i] - next.gamma[i])});
        scale = std::max({scale, std::abs(trial.phi[i]), std::abs(trial.zeta[i]),
                          std::abs(trial.gamma[i])});
      }
      next = std::move(trial);
      if (diff <= cfg_.fixed_point_tol * scale) break;
    }
    return next;
  }

  const DualMesh& mesh_;
  RunConfig cfg_;
  BoundaryStencil stencil_;
  CellField psi_guess_, chi_guess_;
  bool have_guess_ = false;
  std::size_t last_iterations_ = 0;
  double last_residual_ = 0.0;
  std::size_t last_fp_ = 0;
};

inline State step(const State& s, const DualMesh& m, const RunConfig& cfg) {
  Stepper stepper(m, cfg);
  return stepper.step(s);
}

inline SeriesRow measure(double t, const State& s, const Diagnostics& d,
                         const PhysicsConfig& c, const DualMesh& m) {
  SeriesRow r;
  r.t = t;
  r.mass = mass(s, c, m);
  r.circulation = circulation(s, c, m);
  r.energy = total_energy(s, d, c, m);
  r.enstrophy = potential_enstrophy(s, c, m);
  r.iterations = d.stats.iterations;
  r.residual = d.stats.residual;
  return r;
}

/// Advances n_steps, recording the series every output_every steps (and at
/// the last step). `sink`, if set, sees the same snapshots.
inline ConservationSeries run(const State& initial, const DualMesh& m,
                              const RunConfig& cfg,
                              const std::function<void(const Snapshot&)>& sink = {},
                              State* final_state = nullptr) {
  Stepper stepper(m, cfg);
  ConservationSeries series;
  State s = initial;
  auto emit = [&](std::size_t k, std::size_t iters, double residual) {
    const double t = static_cast<double>(k) * cfg.dt;
    Diagnostics d = stepper.diagnose(s);
    SeriesRow row = measure(t, s, d, cfg.physics, m);
    if (k > 0) {
      row.iterations = iters;
      row.residual = residual;
    }
    series.push_back(row);
    if (sink) sink({k, t, &s, &d});
  };
  emit(0, 0, 0.0);
  for (std::size_t k = 1; k <= cfg.n_steps; ++k) {
    s = stepper.step(s);
    if (k % cfg.output_every == 0 || k == cfg.n_steps)
      emit(k, stepper.last_iterations(), stepper.last_residual());
  }
  if (final_state) *final_state = s;
  return series;
}

/// Advisory time-step bound 0.5·min(d_e)/√(g·max φ).
inline double cfl_limit(const State& s, const PhysicsConfig& c,
                        const DualMesh& m) {
  double dmin = INFINITY, pmax = 0.0;
  for (double d : m.dual_length) dmin = std::min(dmin, d);
  for (double p : s.phi) pmax = std::max(pmax, p);
  return 0.5 * dmin / std::sqrt(c.g * pmax);
}

}  // namespace hamswe
