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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hamswe/dispersion.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/random.hpp"
#include "hamswe/voronoi.hpp"

using namespace hamswe;

namespace {

constexpr double kPi = std::numbers::pi;

/// Eigenvalues of the periodic five-point −Δ_h.
std::vector<double> five_point_eigenvalues(std::size_t nx, std::size_t ny, double lx,
                                           double ly) {
  const double hx = lx / static_cast<double>(nx), hy = ly / static_cast<double>(ny);
  std::vector<double> out;
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l) {
      const double sx = std::sin(kPi * static_cast<double>(k) / static_cast<double>(nx));
      const double sy = std::sin(kPi * static_cast<double>(l) / static_cast<double>(ny));
      out.push_back(4.0 * sx * sx / (hx * hx) + 4.0 * sy * sy / (hy * hy));
    }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd stacked(const CellField& p, const CellField& z, const CellField& g) {
  return detail::stack(Tendency{p, z, g});
}

}  // namespace

TEST(LinearTendency, RestAndInertialLimits) {
  const DualMesh m = build_periodic_quad_mesh(6, 6, 1.0, 1.0);
  const std::size_t n = m.n_cells();
  const LinearizedSystem sys{1.5, 2.0, 9.81, &m};
  const Tendency rest = linear_tendency(CellField(n), CellField(n), CellField(n), sys);
  EXPECT_EQ(rest.dphi.max_abs() + rest.dzeta.max_abs() + rest.dgamma.max_abs(), 0.0);
  const Tendency t = linear_tendency(CellField(n), CellField(n, 0.4), CellField(n), sys);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(t.dgamma[i], 1.5 * 0.4, 1e-15);
}

TEST(LinearGenerator, AssemblyMatchesTheTendency) {
  const DualMesh m = build_periodic_quad_mesh(5, 4, 1.0, 1.0);
  const std::size_t n = m.n_cells();
  const LinearizedSystem sys{1.2, 0.8, 2.0, &m};
  const Eigen::MatrixXd G = assemble_linear_generator(sys);
  Lcg64 rng(3);
  const CellField p = rng.field<location::Cell>(n), z = rng.field<location::Cell>(n),
                  g = rng.field<location::Cell>(n);
  const Eigen::VectorXd lhs = G * stacked(p, z, g);
  const Eigen::VectorXd rhs = detail::stack(linear_tendency(p, z, g, sys));
  EXPECT_LT((lhs - rhs).norm(), 1e-12 * rhs.norm());
}

TEST(LaplacianSpectrum, MatchesTheFivePointFormula) {
  for (auto [nx, ny, lx, ly] : {std::tuple{8ul, 8ul, 1.0, 1.0}, std::tuple{6ul, 5ul, 1.2, 0.9}}) {
    const DualMesh m = build_periodic_quad_mesh(nx, ny, lx, ly);
    const std::vector<double> num = laplacian_eigenvalues(m);
    const std::vector<double> exact = five_point_eigenvalues(nx, ny, lx, ly);
    ASSERT_EQ(num.size(), exact.size());
    for (std::size_t k = 0; k < num.size(); ++k)
      EXPECT_NEAR(num[k], exact[k], 1e-10 * std::max(1.0, exact[k]));
  }
}

TEST(Dispersion, GeneratorReproducesZGridRelation) {
  const DualMesh m = build_periodic_quad_mesh(8, 8, 1.0, 1.0);
  const LinearizedSystem sys{1.0, 1.0, 1.0, &m};
  const DispersionResult r = dispersion_spectrum(sys);
  EXPECT_EQ(r.zero_modes, m.n_cells());
  EXPECT_EQ(r.expected_zero_modes, m.n_cells());
  EXPECT_LT(r.max_abs_err, 1e-9);
  EXPECT_LT(r.max_real_part, 1e-10);
  ASSERT_EQ(r.modes.size(), m.n_cells());
  EXPECT_NEAR(r.modes.front().lambda, 0.0, 1e-10);
  EXPECT_NEAR(r.modes.front().omega_numeric, 1.0, 1e-10);
  const double h = 1.0 / 8.0;
  const double lambda1 = 4.0 * std::pow(std::sin(kPi / 8.0), 2) / (h * h);
  EXPECT_NEAR(r.modes[1].omega_numeric * r.modes[1].omega_numeric, 1.0 + lambda1, 1e-10);
}

TEST(Dispersion, NonrotatingSystemHasExtraZeroPair) {
  const DualMesh m = build_periodic_quad_mesh(6, 6, 1.0, 1.0);
  const LinearizedSystem sys{0.0, 1.0, 2.0, &m};
  const DispersionResult r = dispersion_spectrum(sys);
  EXPECT_EQ(r.zero_modes, m.n_cells() + 2);
  EXPECT_EQ(r.expected_zero_modes, m.n_cells() + 2);
  EXPECT_LT(r.max_abs_err, 1e-9);
}

TEST(Dispersion, DegreeOfFreedomCountIsThreePerCell) {
  const DualMesh m = build_periodic_quad_mesh(4, 5, 1.0, 1.0);
  const DispersionResult r = dispersion_spectrum({1.0, 1.0, 1.0, &m});
  EXPECT_EQ(r.eigenvalues.size(), 3 * m.n_cells());
}

TEST(Dispersion, BoundedMeshesAreUnsupported) {
  const DualMesh m = build_bounded_voronoi_mesh(hexagon_generators(2, 1.0),
                                                hexagon_domain(2, 1.0));
  EXPECT_THROW(dispersion_spectrum({1.0, 1.0, 1.0, &m}), Unsupported);
  EXPECT_THROW(linearize_scheme(Scheme::energy, {1.0, 1.0, 1.0, &m}), Unsupported);
}

TEST(Dispersion, GeneratorSquaredActsAsTheWaveOperator) {
  const std::size_t nx = 8, ny = 8;
  const DualMesh m = build_periodic_quad_mesh(nx, ny, 1.0, 1.0);
  const std::size_t n = m.n_cells();
  const LinearizedSystem sys{1.3, 0.7, 2.0, &m};
  const Eigen::MatrixXd G = assemble_linear_generator(sys);
  const double h = 1.0 / 8.0;
  for (auto [k, l] : {std::pair{1, 0}, std::pair{2, 3}, std::pair{4, 4}}) {
    CellField e(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 p = m.cell_center[i];
      e[i] = std::cos(2 * kPi * (k * p.x + l * p.y) + 0.3);
    }
    const double lambda = 4.0 / (h * h) *
                          (std::pow(std::sin(kPi * k / 8.0), 2) + std::pow(std::sin(kPi * l / 8.0), 2));
    const Eigen::VectorXd v = stacked(CellField(n), CellField(n), e);
    const Eigen::VectorXd w = G * (G * v);
    const double omega2 = sys.f0 * sys.f0 + sys.g * sys.phibar * lambda;
    const Eigen::VectorXd expected = -omega2 * v;
    const auto N = static_cast<Eigen::Index>(n);
    EXPECT_LT((w.tail(N) - expected.tail(N)).norm(), 1e-11 * expected.tail(N).norm());
  }
}

TEST(SchemeLinearization, MatchesTheAssembledGeneratorOnZeroMeanFields) {
  const DualMesh m = build_periodic_quad_mesh(5, 5, 1.0, 1.0);
  const std::size_t n = m.n_cells();
  const auto N = static_cast<Eigen::Index>(n);
  const LinearizedSystem sys{1.0, 1.0, 1.0, &m};
  const Eigen::MatrixXd G = assemble_linear_generator(sys);
  const Eigen::MatrixXd J = linearize_scheme(Scheme::energy, sys);
  ASSERT_EQ(J.rows(), 3 * N - 2);
  // Column for φ′ at cell 3, and for ζ at cell 2 balanced by cell 0.
  Eigen::VectorXd dphi = G.col(3);
  for (Eigen::Index i = 0; i < N; ++i) EXPECT_NEAR(J(i, 3), dphi[i], 1e-8);
  Eigen::VectorXd dz = G.col(N + 2) - G.col(N);
  for (Eigen::Index i = 1; i < N; ++i) EXPECT_NEAR(J(2 * N - 1 + i - 1, N + 1), dz[2 * N + i], 1e-8);
}

TEST(SchemeLinearization, BothSchemesShareTheZGridSpectrum) {
  const DualMesh m = build_periodic_quad_mesh(6, 6, 1.0, 1.0);
  const LinearizedSystem sys{1.0, 1.0, 1.0, &m};
  for (Scheme s : {Scheme::energy, Scheme::energy_enstrophy}) {
    const DispersionResult r = scheme_dispersion_spectrum(s, sys);
    EXPECT_LT(r.max_abs_err, 1e-10);
    EXPECT_EQ(r.zero_modes, r.expected_zero_modes);
    EXPECT_LT(r.max_real_part, 1e-8);
  }
}

TEST(SchemeLinearization, FiniteDifferenceErrorIsSecondOrder) {
  const DualMesh m = build_periodic_quad_mesh(4, 4, 1.0, 1.0);
  const LinearizedSystem sys{1.0, 1.0, 1.0, &m};
  const std::size_t n = m.n_cells();
  const PhysicsConfig c = PhysicsConfig::uniform(m, 1.0, 1.0);
  CellField p(n), z(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 x = m.cell_center[i];
    p[i] = std::sin(2 * kPi * x.x);
    z[i] = std::cos(2 * kPi * x.y);
    g[i] = std::sin(2 * kPi * (x.x + x.y));
  }
  const Eigen::VectorXd lin = detail::stack(linear_tendency(p, z, g, sys));
  SolveOptions opt;
  opt.tol = 1e-13;
  auto err = [&](double eps) {
    const State s{CellField(n, 1.0) + eps * p, eps * z, eps * g};
    const Diagnostics d = solve_psi_chi(s, c, m, opt);
    return (detail::stack(tendency(Scheme::energy, d, m)) - eps * lin).norm();
  };
  const double e1 = err(1e-2), e2 = err(5e-3), e3 = err(2.5e-3);
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.05);
  EXPECT_NEAR(std::log2(e2 / e3), 2.0, 0.05);
}
