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

#include <cmath>
#include <numbers>

#include "hamswe/mesh.hpp"
#include "hamswe/operators.hpp"
#include "hamswe/random.hpp"
#include "hamswe/verify.hpp"
#include "hamswe/voronoi.hpp"

using namespace hamswe;

namespace {

constexpr double kPi = std::numbers::pi;

DualMesh hexagon(std::size_t rings, double jitter = 0.1, std::uint64_t seed = 3) {
  return build_bounded_voronoi_mesh(hexagon_generators(rings, 1.0, jitter, seed),
                                    hexagon_domain(rings, 1.0));
}

template <class Location, class F>
Field<Location> sample(const std::vector<Vec2>& pts, F f) {
  Field<Location> out(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) out[k] = f(pts[k]);
  return out;
}

Vec2 edge_midpoint(const DualMesh& m, std::size_t e) {
  const auto& ce = m.cells_of_edge[e];
  const Vec2 a = m.cell_center[ce[0].index];
  return a + 0.5 * m.displacement(a, m.cell_center[ce[1].index]);
}

}  // namespace

TEST(Averaging, ConstantsArePreserved) {
  for (const DualMesh& m : {build_periodic_quad_mesh(6, 5, 1.0, 1.3), hexagon(3)}) {
    const CellField one(m.n_cells(), 1.0);
    for (double v : cell_to_vertex(one, m)) EXPECT_NEAR(v, 1.0, 1e-14);
    for (double v : vertex_to_cell(VertexField(m.n_vertices(), 1.0), m))
      EXPECT_NEAR(v, 1.0, 1e-14);
    for (double v : cell_to_edge(one, m)) EXPECT_NEAR(v, 1.0, 1e-14);
  }
  const DualMesh q = build_periodic_quad_mesh(6, 5, 1.0, 1.3);
  for (double v : edge_to_cell(EdgeScalar(q.n_edges(), 1.0), q))
    EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Averaging, RoundTripIsNotTheIdentity) {
  const DualMesh m = hexagon(3);
  Lcg64 rng(11);
  const CellField f = rng.field<location::Cell>(m.n_cells());
  const CellField back = vertex_to_cell(cell_to_vertex(f, m), m);
  EXPECT_GT((back - f).max_abs(), 1e-3);
}

TEST(Averaging, CellEdgePairingsAreAdjoint) {
  for (const DualMesh& m : {build_periodic_quad_mesh(5, 7, 1.0, 1.0), hexagon(2)}) {
    Lcg64 rng(5);
    const CellField f = rng.field<location::Cell>(m.n_cells());
    const CellField g = rng.field<location::Cell>(m.n_cells());
    const double lhs = inner_product(cell_to_edge(f, m), cell_to_edge(g, m), m);
    const double rhs = inner_product(f, edge_to_cell(cell_to_edge(g, m), m), m);
    EXPECT_NEAR(lhs, rhs, 1e-13 * std::abs(lhs));
  }
}

TEST(Gradient, ExactForLinearFunctionsAwayFromTheSeam) {
  const std::size_t nx = 8, ny = 6;
  const DualMesh m = build_periodic_quad_mesh(nx, ny, 1.0, 1.5);
  const auto gx = grad_cell(sample<location::Cell>(m.cell_center,
                                                   [](Vec2 p) { return p.x; }), m);
  const auto gy = grad_cell(sample<location::Cell>(m.cell_center,
                                                   [](Vec2 p) { return 3.0 * p.y; }), m);
  for (std::size_t b = 0; b < ny; ++b) {
    for (std::size_t a = 0; a < nx; ++a) {
      const std::size_t i = b * nx + a;
      if (a + 1 < nx) {
        EXPECT_NEAR(gx[2 * i], 1.0, 1e-13);
        EXPECT_NEAR(gy[2 * i], 0.0, 1e-13);
      }
      if (b + 1 < ny) {
        EXPECT_NEAR(gx[2 * i + 1], 0.0, 1e-13);
        EXPECT_NEAR(gy[2 * i + 1], 3.0, 1e-13);
      }
    }
  }
}

TEST(Gradient, SecondOrderAtEdgeMidpoints) {
  auto worst = [](std::size_t n) {
    const DualMesh m = build_periodic_quad_mesh(n, n, 1.0, 1.0);
    auto f = [](Vec2 p) { return std::sin(2 * kPi * p.x) * std::cos(2 * kPi * p.y); };
    const NormalEdgeField g = grad_cell(sample<location::Cell>(m.cell_center, f), m);
    double err = 0.0;
    for (std::size_t e = 0; e < m.n_edges(); ++e) {
      const Vec2 p = edge_midpoint(m, e);
      const Vec2 grad{2 * kPi * std::cos(2 * kPi * p.x) * std::cos(2 * kPi * p.y),
                      -2 * kPi * std::sin(2 * kPi * p.x) * std::sin(2 * kPi * p.y)};
      err = std::max(err, std::abs(g[e] - dot(grad, m.edge_normal[e])));
    }
    return err;
  };
  const double e16 = worst(16), e32 = worst(32), e64 = worst(64);
  EXPECT_GT(std::log2(e16 / e32), 1.9);
  EXPECT_GT(std::log2(e32 / e64), 1.9);
}

TEST(Gradient, SkewGradientCarriesTheSameNumbers) {
  const DualMesh m = hexagon(2);
  Lcg64 rng(2);
  const CellField f = rng.field<location::Cell>(m.n_cells());
  const auto g = grad_cell(f, m);
  const auto s = skew_grad_cell(f, m);
  for (std::size_t e = 0; e < m.n_edges(); ++e) EXPECT_EQ(g[e], s[e]);
}

TEST(Gradient, BoundedVertexGradientNeedsBoundaryValues) {
  const DualMesh m = hexagon(2);
  const VertexField f(m.n_vertices(), 1.0);
  EXPECT_THROW(grad_vertex(f, m), InvalidArgument);
  EXPECT_THROW(skew_grad_vertex(f, m), InvalidArgument);
  EXPECT_NO_THROW(grad_vertex(f, EdgeScalar(m.n_edges()), m));
  const DualMesh q = build_periodic_quad_mesh(4, 4, 1.0, 1.0);
  EXPECT_NO_THROW(grad_vertex(VertexField(q.n_vertices()), q));
}

TEST(Gradient, RejectsWrongLengths) {
  const DualMesh m = build_periodic_quad_mesh(4, 4, 1.0, 1.0);
  EXPECT_THROW(grad_cell(CellField(3), m), InvalidArgument);
  EXPECT_THROW(div_normal(NormalEdgeField(m.n_cells()), m), InvalidArgument);
  EXPECT_THROW(inner_product(CellField(m.n_cells()), CellField(2), m), InvalidArgument);
}

TEST(Divergence, SingleEdgeFlux) {
  const DualMesh m = hexagon(2);
  for (std::size_t e : {0ul, 7ul, m.n_edges() - 1}) {
    NormalEdgeField u(m.n_edges());
    u[e] = 2.5;
    const CellField d = div_normal(u, m);
    for (std::size_t i = 0; i < m.n_cells(); ++i) {
      double expected = 0.0;
      for (const Incidence& c : m.cells_of_edge[e])
        if (c.index == i)
          expected = c.sign * 2.5 * m.primal_length[e] / m.cell_area[i];
      EXPECT_NEAR(d[i], expected, 1e-13);
    }
  }
}

TEST(Divergence, GaussSumVanishesOnTheTorus) {
  const DualMesh m = build_periodic_quad_mesh(7, 5, 1.2, 1.0);
  Lcg64 rng(9);
  const NormalEdgeField u = rng.field<location::NormalEdge>(m.n_edges());
  const CellField d = div_normal(u, m);
  EXPECT_NEAR(inner_product(d, CellField(m.n_cells(), 1.0), m), 0.0, 1e-13);
}

TEST(Divergence, UniformFlowIsDivergenceFree) {
  const DualMesh m = build_periodic_quad_mesh(6, 6, 1.0, 1.0);
  NormalEdgeField u(m.n_edges());
  for (std::size_t e = 0; e < m.n_edges(); ++e)
    u[e] = dot(Vec2{0.3, -1.7}, m.edge_normal[e]);
  EXPECT_LT(div_normal(u, m).max_abs(), 1e-13);
  EXPECT_LT(curl_normal(u, m).max_abs(), 1e-13);
}

TEST(Laplacian, MatchesFivePointStencil) {
  const std::size_t nx = 8, ny = 6;
  const double hx = 1.0 / nx, hy = 1.5 / ny;
  const DualMesh m = build_periodic_quad_mesh(nx, ny, 1.0, 1.5);
  Lcg64 rng(4);
  const CellField f = rng.field<location::Cell>(m.n_cells());
  const CellField lap = laplacian_cell(f, m);
  auto at = [&](std::size_t a, std::size_t b) { return f[(b % ny) * nx + a % nx]; };
  for (std::size_t b = 0; b < ny; ++b)
    for (std::size_t a = 0; a < nx; ++a) {
      const double c = at(a, b);
      const double oracle = (at(a + 1, b) - 2 * c + at(a + nx - 1, b)) / (hx * hx) +
                            (at(a, b + 1) - 2 * c + at(a, b + ny - 1)) / (hy * hy);
      EXPECT_NEAR(lap[b * nx + a], oracle, 1e-11);
    }
}

TEST(Laplacian, SelfAdjointAndNegative) {
  for (const DualMesh& m : {build_periodic_quad_mesh(6, 6, 1.0, 1.0), hexagon(3)}) {
    Lcg64 rng(8);
    const CellField f = rng.field<location::Cell>(m.n_cells());
    const CellField g = rng.field<location::Cell>(m.n_cells());
    const double fg = inner_product(laplacian_cell(f, m), g, m);
    const double gf = inner_product(f, laplacian_cell(g, m), m);
    EXPECT_NEAR(fg, gf, 1e-12 * std::abs(fg));
    EXPECT_LT(inner_product(laplacian_cell(f, m), f, m), 0.0);
  }
}

TEST(Laplacian, SecondOrderEigenvalueConvergence) {
  auto err = [](std::size_t n) {
    const DualMesh m = build_periodic_quad_mesh(n, n, 1.0, 1.0);
    const CellField f = sample<location::Cell>(
        m.cell_center, [](Vec2 p) { return std::sin(2 * kPi * p.x); });
    const CellField lap = laplacian_cell(f, m);
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      e = std::max(e, std::abs(lap[i] + 4 * kPi * kPi * f[i]));
    return e;
  };
  EXPECT_NEAR(err(16) / err(32), 4.0, 0.1);
  EXPECT_NEAR(err(32) / err(64), 4.0, 0.05);
}

TEST(InnerProduct, OnesGiveTheArea) {
  for (const DualMesh& m : {build_periodic_quad_mesh(5, 4, 2.0, 1.5), hexagon(4)}) {
    const double area = m.total_area();
    EXPECT_NEAR(inner_product(CellField(m.n_cells(), 1.0), CellField(m.n_cells(), 1.0), m),
                area, 1e-12 * area);
    EXPECT_NEAR(inner_product(VertexField(m.n_vertices(), 1.0),
                              VertexField(m.n_vertices(), 1.0), m),
                area, 1e-12 * area);
  }
  const DualMesh q = build_periodic_quad_mesh(5, 4, 2.0, 1.5);
  EXPECT_NEAR(inner_product(EdgeScalar(q.n_edges(), 1.0), EdgeScalar(q.n_edges(), 1.0), q),
              2.0 * 1.5, 1e-12);
}

TEST(InnerProduct, CellQuadratureConverges) {
  auto err = [](std::size_t n) {
    const DualMesh m = build_periodic_quad_mesh(n, n, 1.0, 1.0);
    const CellField f = sample<location::Cell>(
        m.cell_center, [](Vec2 p) { return std::exp(std::sin(2 * kPi * p.x)); });
    const CellField g = sample<location::Cell>(
        m.cell_center, [](Vec2 p) { return 1.0 + std::cos(2 * kPi * p.y); });
    // ∫∫ e^{sin 2πx} (1 + cos 2πy) = I₀(1).
    constexpr double bessel_i0_1 = 1.2660658777520083;
    return std::abs(inner_product(f, g, m) - bessel_i0_1);
  };
  const double e4 = err(4), e8 = err(8);
  EXPECT_LT(e8, std::max(e4 / 4.0, 1e-14));
  EXPECT_LT(err(16), 1e-13);
}

TEST(Calculus, IdentitiesHoldOnTheTorus) {
  const DualMesh m = build_periodic_quad_mesh(7, 6, 1.0, 1.3);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const CalculusReport rep = verify_calculus(m, seed, 10);
    for (const auto& r : rep.identities)
      EXPECT_LE(r.defect, r.tolerance) << r.name << " seed " << seed;
  }
}

TEST(Calculus, IdentitiesHoldOnBoundedVoronoiMeshes) {
  for (std::uint64_t seed : {1u, 7u}) {
    const DualMesh m = hexagon(4, 0.15, seed);
    const CalculusReport rep = verify_calculus(m, seed, 10);
    EXPECT_EQ(rep.identities.size(), 12u);
    for (const auto& r : rep.identities)
      EXPECT_LE(r.defect, r.tolerance) << r.name << " seed " << seed;
  }
}

TEST(Calculus, InjectedSignErrorBreaksTheAdjointIdentities) {
  DualMesh m = build_periodic_quad_mesh(5, 5, 1.0, 1.0);
  m.cells_of_edge[5][0].sign = -m.cells_of_edge[5][0].sign;
  const CalculusReport rep = verify_calculus(m, 1, 5);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.find("parts grad")->passed());
  EXPECT_FALSE(rep.find("curl grad")->passed());
  EXPECT_TRUE(rep.find("adjoint cell-vertex")->passed());
}

TEST(Calculus, BoundaryTermMattersOnBoundedMeshes) {
  const DualMesh m = hexagon(3);
  Lcg64 rng(21);
  const VertexField p = rng.field<location::Vertex>(m.n_vertices());
  const EdgeScalar b = rng.field<location::TangentialEdge>(m.n_edges());
  const NormalEdgeField u = rng.field<location::NormalEdge>(m.n_edges());
  const double lhs = inner_product(u, skew_grad_vertex(p, b, m), m);
  const double interior = -0.5 * inner_product(curl_normal(u, m), p, m);
  EXPECT_GT(std::abs(lhs - interior), 1e-3);
  EXPECT_NEAR(lhs, interior - boundary_flux(b, u, m), 1e-12 * std::abs(lhs));
}
