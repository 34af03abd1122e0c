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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hamswe/dispersion.hpp"
#include "hamswe/dynamics.hpp"
#include "hamswe/elliptic.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/random.hpp"
#include "hamswe/timeloop.hpp"
#include "hamswe/verify.hpp"
#include "hamswe/voronoi.hpp"

using namespace hamswe;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

DualMesh quad(std::size_t n) { return build_periodic_quad_mesh(n, n, 1.0, 1.0); }

/// 61-cell jittered hexagon.
DualMesh hexagon() {
  return build_bounded_voronoi_mesh(hexagon_generators(4, 1.0, 0.1, 3),
                                    hexagon_domain(4, 1.0));
}

CellField random_thickness(Lcg64& rng, const DualMesh& m) {
  return rng.field<location::Cell>(m.n_cells(), 0.5, 1.5);
}

CellField pinned(CellField psi, const DualMesh& m) {
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (m.is_boundary_cell(i)) psi[i] = 0.0;
  return psi;
}

CellField mean_free(const CellField& f, const DualMesh& m) {
  const double mean = inner_product(f, CellField(f.size(), 1.0), m) / m.total_area();
  return f - CellField(f.size(), mean);
}

Outcome calculus_suite() {
  double adjoint = 0.0, parts = 0.0, null = 0.0;
  bool ok = true;
  std::string failed;
  for (const DualMesh& m : {quad(8), hexagon()}) {
    const CalculusReport rep = verify_calculus(m, 42, 20);
    for (const IdentityResult& r : rep.identities) {
      if (r.name.rfind("adjoint", 0) == 0) adjoint = std::max(adjoint, r.defect);
      if (r.name.rfind("parts", 0) == 0) parts = std::max(parts, r.defect);
      if (r.name == "curl grad" || r.name == "div skew-grad") null = std::max(null, r.defect);
      if (!r.passed()) {
        ok = false;
        failed += " " + r.name;
      }
    }
  }
  ok = ok && adjoint < 1e-12 && parts < 1e-12 && null < 1e-13;
  return {ok, fmt("adjoint %.1e, parts %.1e, null %.1e%s", adjoint, parts, null,
                  failed.empty() ? "" : (" failed:" + failed).c_str())};
}

Outcome elliptic_self_adjoint() {
  double worst = 0.0;
  for (const DualMesh& m : {quad(8), hexagon()}) {
    Lcg64 rng(7);
    const EdgeScalar phi_edge = cell_to_edge(random_thickness(rng, m), m);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = m.n_cells();
      const CellField p1 = pinned(rng.field<location::Cell>(n), m);
      const CellField c1 = rng.field<location::Cell>(n);
      const CellField p2 = pinned(rng.field<location::Cell>(n), m);
      const CellField c2 = rng.field<location::Cell>(n);
      const auto [z1, g1] = apply_A(p1, c1, phi_edge, m);
      const auto [z2, g2] = apply_A(p2, c2, phi_edge, m);
      const double l = inner_product(z1, p2, m) + inner_product(g1, c2, m);
      const double r = inner_product(p1, z2, m) + inner_product(c1, g2, m);
      worst = std::max(worst, std::abs(l - r) / std::max(std::abs(l), std::abs(r)));
    }
  }
  return {worst < 1e-12, fmt("max relative asymmetry %.1e", worst)};
}

Outcome elliptic_round_trip() {
  const DualMesh m = quad(16);
  const std::size_t n = m.n_cells();
  Lcg64 rng(17);
  const EdgeScalar phi_edge = cell_to_edge(random_thickness(rng, m), m);
  CellField psi = rng.field<location::Cell>(n), chi = rng.field<location::Cell>(n);
  psi = psi - CellField(n, psi[0]);
  chi = chi - CellField(n, chi[0]);
  const auto [zeta, gamma] = apply_A(psi, chi, phi_edge, m);
  SolveOptions opt;
  opt.tol = 1e-11;
  SolveStats stats;
  const auto [ps, cs] = solve_A(zeta, gamma, phi_edge, m, opt, &stats);
  const double scale = std::max(psi.max_abs(), chi.max_abs());
  const double err = std::max((ps - psi).max_abs(), (cs - chi).max_abs()) / scale;
  return {err < 1e-9, fmt("16x16 relative error %.1e in %zu iterations", err, stats.iterations)};
}

Outcome conservation_rates() {
  double energy = 0.0, enstrophy = 0.0, residual = 0.0, mass_rate = 0.0, circ = 0.0;
  for (const DualMesh& m : {quad(8), hexagon()}) {
    const std::size_t n = m.n_cells();
    const BoundaryStencil st = BoundaryStencil::build(m);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      Lcg64 rng(seed);
      PhysicsConfig c = PhysicsConfig::uniform(m, 1.0, 1.0);
      State s;
      s.phi = random_thickness(rng, m);
      const CellField psi = pinned(rng.field<location::Cell>(n, -0.05, 0.05), m);
      const CellField chi = rng.field<location::Cell>(n, -0.05, 0.05);
      std::tie(s.zeta, s.gamma) = apply_A(psi, chi, cell_to_edge(s.phi, m), m);
      SolveOptions opt;
      opt.tol = 1e-13;
      const Diagnostics d = solve_psi_chi(s, c, m, opt);
      const double H = total_energy(s, d, c, m), Z = potential_enstrophy(s, c, m);
      for (Scheme sc : {Scheme::energy, Scheme::energy_enstrophy}) {
        const Tendency t = tendency(sc, d, m, &st);
        energy = std::max(energy, std::abs(energy_rate(d, t, m)) / std::abs(H));
        if (sc == Scheme::energy_enstrophy)
          enstrophy = std::max(enstrophy, std::abs(enstrophy_rate(d, t, m)) / std::abs(Z));
        if (sc == Scheme::energy) {
          const double pred = enstrophy_residual_scheme1(d, m);
          residual = std::max(residual, std::abs(enstrophy_rate(d, t, m) - pred) / std::abs(pred));
        }
        if (m.periodic) {
          const CellField one(n, 1.0);
          mass_rate = std::max(mass_rate, std::abs(inner_product(t.dphi, one, m)) /
                                              mass(s, c, m));
          circ = std::max(circ, std::abs(inner_product(t.dzeta, one, m)) /
                                    std::abs(circulation(s, c, m)));
        }
      }
    }
  }
  const bool ok = energy <= 1e-9 && enstrophy <= 1e-9 && residual <= 1e-9 &&
                  mass_rate <= 1e-12 && circ <= 1e-12;
  return {ok, fmt("dH/H %.1e, dZ/Z %.1e, residual %.1e, mass %.1e, circulation %.1e",
                  energy, enstrophy, residual, mass_rate, circ)};
}

Outcome trilinear_antisymmetry() {
  const DualMesh m = quad(8);
  const std::size_t n = m.n_cells();
  Lcg64 rng(85);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Derivatives F = detail::random_derivatives(rng, n);
    const Derivatives H = detail::random_derivatives(rng, n);
    for (auto [a, b, c] : {std::tuple{&F, &F, &H}, std::tuple{&F, &H, &F},
                           std::tuple{&H, &F, &F}}) {
      const double v = trilinear_bracket(*a, *b, *c, m);
      worst = std::max(worst, std::abs(v) / detail::trilinear_scale(*a, *b, *c, m));
    }
  }
  return {worst <= 1e-13, fmt("50 trials, worst relative value %.1e", worst)};
}

Outcome drift_orders() {
  const DualMesh m = quad(8);
  const std::size_t n = m.n_cells();
  auto state = [&](double P, double A, double chi_factor) {
    CellField psi(n), chi(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double X = 2 * kPi * m.cell_center[i].x, Y = 2 * kPi * m.cell_center[i].y;
      phi[i] = 1.0 + P * std::sin(X) * std::cos(Y);
      psi[i] = A * std::cos(X + 0.3) * std::cos(Y - 0.2) * phi[i];
      chi[i] = chi_factor * A * std::sin(X);
    }
    return initialize_from_velocity_potentials(psi, chi, phi, m);
  };

  // Slow, vortex-dominated flow so the leading RK4 error term is resolved.
  const State s0 = state(0.7, 0.03, 0.3);
  RunConfig rk;
  rk.physics = PhysicsConfig::uniform(m, 1.0, 0.08);
  rk.solver_tol = 1e-12;
  const double horizon = 0.5;
  double drift[2];
  double dts[2] = {0.002, 0.001};
  for (int k = 0; k < 2; ++k) {
    rk.dt = dts[k];
    rk.n_steps = static_cast<std::size_t>(std::lround(horizon / rk.dt));
    rk.output_every = rk.n_steps;
    const ConservationSeries s = run(s0, m, rk);
    drift[k] = std::abs(s.back().energy - s.front().energy);
  }
  const double ratio = drift[0] / drift[1];

  const State s1 = state(0.1, 0.02, 0.3);
  RunConfig mp;
  mp.physics = PhysicsConfig::uniform(m, 1.0, 1.0);
  mp.scheme = Scheme::energy_enstrophy;
  mp.integrator = Integrator::implicit_midpoint;
  mp.fixed_point_tol = 1e-12;
  mp.solver_tol = 1e-12;
  mp.dt = 1e-3;
  mp.n_steps = 100;
  const ConservationSeries s = run(s1, m, mp);
  double dH = 0.0, dZ = 0.0;
  for (const SeriesRow& r : s) {
    dH = std::max(dH, std::abs(r.energy - s.front().energy) / s.front().energy);
    dZ = std::max(dZ, std::abs(r.enstrophy - s.front().enstrophy) / s.front().enstrophy);
  }
  const bool ok = ratio >= 12.0 && ratio <= 20.0 && dH <= 1e-10 && dZ <= 1e-10;
  return {ok, fmt("RK4 drift ratio %.2f, midpoint |dH|/H %.1e, |dZ|/Z %.1e", ratio, dH, dZ)};
}

/// Sorted −Δ_h spectrum of the periodic five-point stencil.
std::vector<double> five_point_spectrum(std::size_t nx) {
  const double h = 1.0 / static_cast<double>(nx);
  std::vector<double> out;
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < nx; ++l) {
      const double sx = std::sin(kPi * static_cast<double>(k) / static_cast<double>(nx));
      const double sy = std::sin(kPi * static_cast<double>(l) / static_cast<double>(nx));
      out.push_back(4.0 * (sx * sx + sy * sy) / (h * h));
    }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome dispersion_equivalence() {
  double worst = 0.0;
  bool zeros_ok = true;
  std::string counts;
  for (std::size_t nx : {8u, 12u}) {
    const DualMesh m = quad(nx);
    const std::size_t n = m.n_cells();
    const DispersionResult r = dispersion_spectrum({1.0, 1.0, 1.0, &m});
    std::vector<double> omega2;
    std::size_t zeros = 0;
    for (const std::complex<double>& z : r.eigenvalues) {
      if (std::abs(z) < 1e-8) {
        ++zeros;
        continue;
      }
      if (z.imag() > 0) omega2.push_back(z.imag() * z.imag());
    }
    std::sort(omega2.begin(), omega2.end());
    const std::vector<double> lambda = five_point_spectrum(nx);
    if (omega2.size() != lambda.size()) {
      zeros_ok = false;
      continue;
    }
    for (std::size_t k = 0; k < lambda.size(); ++k)
      worst = std::max(worst, std::abs(omega2[k] - (1.0 + lambda[k])));
    zeros_ok = zeros_ok && zeros == n;
    counts += fmt(" %zux%zu: %zu/%zu", nx, nx, zeros, n);
  }
  return {worst < 1e-9 && zeros_ok,
          fmt("max |w^2 - (f0^2 + g phibar lambda)| %.1e, zero modes%s", worst, counts.c_str())};
}

Outcome linearization_order() {
  const DualMesh m = quad(8);
  const std::size_t n = m.n_cells();
  const LinearizedSystem sys{1.0, 1.0, 1.0, &m};
  const PhysicsConfig c = PhysicsConfig::uniform(m, 1.0, 1.0);
  Lcg64 rng(8);
  const CellField p = rng.field<location::Cell>(n);
  const CellField z = mean_free(rng.field<location::Cell>(n), m);
  const CellField g = mean_free(rng.field<location::Cell>(n), m);
  const Eigen::VectorXd lin = detail::stack(linear_tendency(p, z, g, sys));
  SolveOptions opt;
  opt.tol = 1e-13;
  double worst = INFINITY;
  for (Scheme sc : {Scheme::energy, Scheme::energy_enstrophy}) {
    auto err = [&](double eps) {
      const State s{CellField(n, 1.0) + eps * p, eps * z, eps * g};
      const Diagnostics d = solve_psi_chi(s, c, m, opt);
      return (detail::stack(tendency(sc, d, m)) - eps * lin).norm();
    };
    const double e1 = err(1e-2), e2 = err(5e-3);
    worst = std::min(worst, std::log2(e1 / e2));
  }
  return {worst >= 1.9, fmt("observed order %.3f", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "discrete calculus suite", 5, calculus_suite},
      {2, "elliptic operator self-adjointness", 5, elliptic_self_adjoint},
      {3, "elliptic round trip", 30, elliptic_round_trip},
      {4, "semi-discrete conservation rates", 60, conservation_rates},
      {5, "trilinear bracket antisymmetry", 60, trilinear_antisymmetry},
      {6, "time-integration drift orders", 120, drift_orders},
      {7, "dispersion equivalence", 60, dispersion_equivalence},
      {8, "linearization consistency", 60, linearization_order},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.budget_s;
    if (!pass) ++failures;
    std::printf("%s %d %s: %s (%.2f s of %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
