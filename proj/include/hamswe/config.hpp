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

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hamswe/elliptic.hpp"
#include "hamswe/error.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/mesh_io.hpp"
#include "hamswe/random.hpp"
#include "hamswe/timeloop.hpp"
#include "hamswe/voronoi.hpp"

namespace hamswe {

/// Run configuration read from `key = value` text with sections
/// [mesh] [physics] [time] [solver] [output]. `#` starts a comment.
struct Config {
  struct MeshSection {
    std::string type = "periodic_quad";  // periodic_quad | hexagon | file
    std::size_t nx = 8, ny = 8;
    double lx = 1.0, ly = 1.0;
    std::size_t rings = 4;
    double spacing = 1.0;
    double jitter = 0.1;
    std::string path;
    std::uint64_t seed = 1;
  } mesh;
  struct PhysicsSection {
    double g = 1.0;
    double f0 = 1.0;
    double beta = 0.0;
    double phibar = 1.0;
    std::string initial = "balanced";  // rest | random | balanced | smooth
    double amplitude = 0.02;
    double thickness_amplitude = 0.1;
    double topography_amplitude = 0.0;
  } physics;
  struct TimeSection {
    std::string scheme = "energy";  // energy | energy-enstrophy
    std::string integrator = "rk4";  // rk4 | implicit-midpoint
    double dt = 1e-3;
    std::size_t steps = 100;
    std::size_t output_every = 10;
  } time;
  struct SolverSection {
    double tol = 1e-11;
    std::size_t max_iterations = 0;
    double fixed_point_tol = 1e-12;
    std::size_t fixed_point_max = 50;
  } solver;
  struct OutputSection {
    std::string dir = ".";
    bool snapshots = true;
  } output;

  /// Canonical listing of every key, in the file syntax.
  std::string dump() const;
  /// Assigns `value` to `section.key`; throws ConfigError naming the key.
  void set(const std::string& section, const std::string& key,
           const std::string& value);
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline double config_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("key '" + key + "': expected a real number, got '" + v + "'");
  return out;
}

template <class Int>
Int config_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" +
                      v + "'");
  return out;
}

inline bool config_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

inline std::string config_choice(const std::string& key, const std::string& v,
                                 std::initializer_list<const char*> allowed) {
  std::string list;
  for (const char* a : allowed) {
    if (v == a) return v;
    list += list.empty() ? a : std::string(", ") + a;
  }
  throw ConfigError("key '" + key + "': expected one of " + list + ", got '" + v +
                    "'");
}

/// Shortest text that round-trips.
inline std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace detail

inline void Config::set(const std::string& section, const std::string& key,
                        const std::string& value) {
  using namespace detail;
  const std::string full = section + "." + key;
  auto real = [&](double& x) { x = config_real(full, value); };
  auto size = [&](std::size_t& x) { x = config_int<std::size_t>(full, value); };
  if (section == "mesh") {
    if (key == "type") { mesh.type = config_choice(full, value, {"periodic_quad", "hexagon", "file"}); return; }
    if (key == "nx") { size(mesh.nx); return; }
    if (key == "ny") { size(mesh.ny); return; }
    if (key == "lx") { real(mesh.lx); return; }
    if (key == "ly") { real(mesh.ly); return; }
    if (key == "rings") { size(mesh.rings); return; }
    if (key == "spacing") { real(mesh.spacing); return; }
    if (key == "jitter") { real(mesh.jitter); return; }
    if (key == "path") { mesh.path = value; return; }
    if (key == "seed") { mesh.seed = config_int<std::uint64_t>(full, value); return; }
  } else if (section == "physics") {
    if (key == "g") { real(physics.g); return; }
    if (key == "f0") { real(physics.f0); return; }
    if (key == "beta") { real(physics.beta); return; }
    if (key == "phibar") { real(physics.phibar); return; }
    if (key == "initial") { physics.initial = config_choice(full, value, {"rest", "random", "balanced", "smooth"}); return; }
    if (key == "amplitude") { real(physics.amplitude); return; }
    if (key == "thickness_amplitude") { real(physics.thickness_amplitude); return; }
    if (key == "topography_amplitude") { real(physics.topography_amplitude); return; }
  } else if (section == "time") {
    if (key == "scheme") { time.scheme = config_choice(full, value, {"energy", "energy-enstrophy"}); return; }
    if (key == "integrator") { time.integrator = config_choice(full, value, {"rk4", "implicit-midpoint"}); return; }
    if (key == "dt") { real(time.dt); return; }
    if (key == "steps") { size(time.steps); return; }
    if (key == "output_every") { size(time.output_every); return; }
  } else if (section == "solver") {
    if (key == "tol") { real(solver.tol); return; }
    if (key == "max_iterations") { size(solver.max_iterations); return; }
    if (key == "fixed_point_tol") { real(solver.fixed_point_tol); return; }
    if (key == "fixed_point_max") { size(solver.fixed_point_max); return; }
  } else if (section == "output") {
    if (key == "dir") { output.dir = value; return; }
    if (key == "snapshots") { output.snapshots = config_bool(full, value); return; }
  } else {
    throw ConfigError("unknown section '" + section + "'");
  }
  throw ConfigError("unknown key '" + full + "'");
}

inline std::string Config::dump() const {
  using detail::fmt;
  std::ostringstream os;
  os << "[mesh]\ntype = " << mesh.type << "\nnx = " << mesh.nx << "\nny = " << mesh.ny
     << "\nlx = " << fmt(mesh.lx) << "\nly = " << fmt(mesh.ly) << "\nrings = " << mesh.rings
     << "\nspacing = " << fmt(mesh.spacing) << "\njitter = " << fmt(mesh.jitter)
     << "\npath = " << mesh.path << "\nseed = " << mesh.seed << "\n";
  os << "[physics]\ng = " << fmt(physics.g) << "\nf0 = " << fmt(physics.f0)
     << "\nbeta = " << fmt(physics.beta) << "\nphibar = " << fmt(physics.phibar)
     << "\ninitial = " << physics.initial << "\namplitude = " << fmt(physics.amplitude)
     << "\nthickness_amplitude = " << fmt(physics.thickness_amplitude)
     << "\ntopography_amplitude = " << fmt(physics.topography_amplitude) << "\n";
  os << "[time]\nscheme = " << time.scheme << "\nintegrator = " << time.integrator
     << "\ndt = " << fmt(time.dt) << "\nsteps = " << time.steps
     << "\noutput_every = " << time.output_every << "\n";
  os << "[solver]\ntol = " << fmt(solver.tol) << "\nmax_iterations = " << solver.max_iterations
     << "\nfixed_point_tol = " << fmt(solver.fixed_point_tol)
     << "\nfixed_point_max = " << solver.fixed_point_max << "\n";
  os << "[output]\ndir = " << output.dir
     << "\nsnapshots = " << (output.snapshots ? "true" : "false") << "\n";
  return os.str();
}

/// Parses config text. Syntax errors raise ParseError with the line number;
/// unknown sections, unknown keys and bad values raise ConfigError.
inline Config parse_config(std::istream& is) {
  Config c;
  std::string section, line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = detail::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("unterminated section header", lineno);
      section = std::string(detail::trim(s.substr(1, s.size() - 2)));
      if (section != "mesh" && section != "physics" && section != "time" &&
          section != "solver" && section != "output")
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section '" +
                          section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key(detail::trim(s.substr(0, eq)));
    const std::string value(detail::trim(s.substr(eq + 1)));
    if (key.empty()) throw ParseError("missing key", lineno);
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                        "' outside a section");
    c.set(section, key, value);
  }
  return c;
}

inline Config parse_config(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

inline Config load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(is);
}

inline DualMesh make_mesh(const Config& c) {
  const auto& s = c.mesh;
  if (s.type == "periodic_quad") return build_periodic_quad_mesh(s.nx, s.ny, s.lx, s.ly);
  if (s.type == "hexagon")
    return build_bounded_voronoi_mesh(hexagon_generators(s.rings, s.spacing, s.jitter, s.seed),
                                      hexagon_domain(s.rings, s.spacing));
  if (s.path.empty()) throw ConfigError("key 'mesh.path' is required for type 'file'");
  return load_mesh(s.path);
}

namespace detail {

struct Box {
  double x0, y0, lx, ly;
};

inline Box domain_box(const DualMesh& m) {
  if (m.periodic) return {0.0, 0.0, m.period_x, m.period_y};
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const Vec2& p : m.vertex_position) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  for (const Vec2& p : m.cell_center) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace detail

/// f = f₀ + β(y − y_mid); b = a_b sin X sin Y over the domain box.
inline PhysicsConfig make_physics(const Config& c, const DualMesh& m) {
  const auto& p = c.physics;
  PhysicsConfig phys = PhysicsConfig::uniform(m, p.f0, p.g);
  const detail::Box box = detail::domain_box(m);
  for (std::size_t i = 0; i < m.n_cells(); ++i) {
    const Vec2 x = m.cell_center[i];
    phys.f[i] = p.f0 + p.beta * (x.y - box.y0 - 0.5 * box.ly);
    phys.b[i] = p.topography_amplitude * std::sin(2.0 * M_PI * (x.x - box.x0) / box.lx) *
                std::sin(2.0 * M_PI * (x.y - box.y0) / box.ly);
  }
  check_physics(phys, m);
  return phys;
}

/// Initial states:
///   rest      φ = φ̄, ζ = γ = 0
///   random    φ = φ̄(1 + a_φ U), ζ, γ = a U with U uniform in [−1, 1)
///   balanced  ψ = a·S(x, y), χ = 0, φ from balanced_state started at the
///             linear geostrophic balance φ = φ̄ + f₀ψ/(gφ̄)
///   smooth    φ = φ̄(1 + a_φ sin X cos Y), ψ = a cos(X + 0.3) cos(Y − 0.2) φ,
///             χ = 0.3 a sin X
/// with X, Y the coordinates scaled to [0, 2π) over the domain box and
/// S = sin X sin Y + ½ cos(X + 2Y). ψ is zeroed on boundary cells, and ζ, γ
/// are made mean-free on periodic meshes.
inline State make_initial_state(const Config& c, const DualMesh& m) {
  const auto& p = c.physics;
  const std::size_t n = m.n_cells();
  if (!(p.phibar > 0.0)) throw ConfigError("key 'physics.phibar' must be positive");
  const detail::Box box = detail::domain_box(m);
  auto angles = [&](std::size_t i) {
    const Vec2 x = m.cell_center[i];
    return std::pair{2.0 * M_PI * (x.x - box.x0) / box.lx,
                     2.0 * M_PI * (x.y - box.y0) / box.ly};
  };
  auto mean_free = [&](CellField& f) {
    if (!m.periodic) return;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * m.cell_area[i];
    s /= m.total_area();
    for (double& x : f) x -= s;
  };
  State s;
  if (p.initial == "rest") {
    s = {CellField(n, p.phibar), CellField(n), CellField(n)};
  } else if (p.initial == "random") {
    Lcg64 rng(c.mesh.seed);
    s.phi = rng.field<location::Cell>(n, -1.0, 1.0);
    for (double& x : s.phi) x = p.phibar * (1.0 + p.thickness_amplitude * x);
    s.zeta = rng.field<location::Cell>(n, -p.amplitude, p.amplitude);
    s.gamma = rng.field<location::Cell>(n, -p.amplitude, p.amplitude);
  } else {
    CellField psi(n), chi(n), phi(n);
    const bool balanced = p.initial == "balanced";
    for (std::size_t i = 0; i < n; ++i) {
      const auto [X, Y] = angles(i);
      if (balanced) {
        psi[i] = p.amplitude * (std::sin(X) * std::sin(Y) + 0.5 * std::cos(X + 2.0 * Y));
        if (m.is_boundary_cell(i)) psi[i] = 0.0;
        phi[i] = p.phibar + p.f0 * psi[i] / (p.g * p.phibar);
      } else {
        phi[i] = p.phibar * (1.0 + p.thickness_amplitude * std::sin(X) * std::cos(Y));
        psi[i] = m.is_boundary_cell(i)
                     ? 0.0
                     : p.amplitude * std::cos(X + 0.3) * std::cos(Y - 0.2) * phi[i];
        chi[i] = 0.3 * p.amplitude * std::sin(X);
      }
    }
    s = balanced ? balanced_state(psi, phi, make_physics(c, m), m)
                 : initialize_from_velocity_potentials(psi, chi, phi, m);
  }
  mean_free(s.zeta);
  mean_free(s.gamma);
  check_state(s, m);
  return s;
}

inline RunConfig make_run_config(const Config& c, const DualMesh& m) {
  RunConfig r;
  r.scheme = c.time.scheme == "energy" ? Scheme::energy : Scheme::energy_enstrophy;
  r.integrator = c.time.integrator == "rk4" ? Integrator::rk4 : Integrator::implicit_midpoint;
  r.dt = c.time.dt;
  r.n_steps = c.time.steps;
  r.output_every = c.time.output_every;
  r.solver_tol = c.solver.tol;
  r.max_iterations = c.solver.max_iterations;
  r.fixed_point_tol = c.solver.fixed_point_tol;
  r.fixed_point_max = c.solver.fixed_point_max;
  r.physics = make_physics(c, m);
  r.validate();
  return r;
}

}  // namespace hamswe
