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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hamswe/config.hpp"
#include "hamswe/dispersion.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/mesh_io.hpp"
#include "hamswe/timeloop.hpp"
#include "hamswe/verify.hpp"

namespace hamswe::cli {

enum ExitCode : int { ok = 0, check_failure = 1, usage_error = 2, solver_failure = 3 };

struct Options {
  std::string config;
  std::string out;
  std::string mesh;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<std::size_t> steps;
  std::optional<std::string> scheme;
  std::optional<double> tol;
  std::size_t sets = 20;
};

namespace detail {

inline std::string real(double v) { return hamswe::detail::format_real(v); }

inline Config resolve(const Options& o) {
  Config c = o.config.empty() ? Config{} : load_config(o.config);
  if (o.seed) c.mesh.seed = *o.seed;
  if (o.dt) c.time.dt = *o.dt;
  if (o.steps) c.time.steps = *o.steps;
  if (o.scheme) c.set("time", "scheme", *o.scheme);
  if (o.tol) c.solver.tol = *o.tol;
  if (!o.out.empty()) c.output.dir = o.out;
  if (!o.mesh.empty()) {
    c.mesh.type = "file";
    c.mesh.path = o.mesh;
  }
  return c;
}

/// Reproducibility header: command, seed, tolerances and the full resolved
/// configuration, each line prefixed with "# ".
inline std::string header(const std::string& command, const Config& c) {
  std::ostringstream os;
  os << "# hamswe " << command << "\n# seed = " << c.mesh.seed
     << "\n# solver.tol = " << hamswe::detail::fmt(c.solver.tol)
     << "\n# solver.fixed_point_tol = " << hamswe::detail::fmt(c.solver.fixed_point_tol)
     << "\n";
  std::istringstream dump(c.dump());
  for (std::string line; std::getline(dump, line);) os << "# " << line << "\n";
  return os.str();
}

inline std::filesystem::path output_path(const Config& c, const std::string& name) {
  std::filesystem::path dir(c.output.dir);
  std::filesystem::create_directories(dir);
  return dir / name;
}

inline std::ofstream open_output(const std::filesystem::path& p) {
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write '" + p.string() + "'");
  return os;
}

inline void write_snapshot(const std::filesystem::path& p, const std::string& head,
                           const Snapshot& s, const DualMesh& m) {
  std::ofstream os = open_output(p);
  os << head << "# step = " << s.step << "\n# t = " << real(s.t) << "\n";
  os << "cell_id,x,y,phi,zeta,gamma,psi,chi\n";
  for (std::size_t i = 0; i < m.n_cells(); ++i)
    os << i << ',' << real(m.cell_center[i].x) << ',' << real(m.cell_center[i].y) << ','
       << real(s.state->phi[i]) << ',' << real(s.state->zeta[i]) << ','
       << real(s.state->gamma[i]) << ',' << real(s.diag->psi[i]) << ','
       << real(s.diag->chi[i]) << '\n';
}

inline void write_series(std::ostream& os, const std::string& head,
                         const ConservationSeries& series) {
  os << head << "t,mass,circulation,energy,enstrophy,iters,residual\n";
  for (const SeriesRow& r : series)
    os << real(r.t) << ',' << real(r.mass) << ',' << real(r.circulation) << ','
       << real(r.energy) << ',' << real(r.enstrophy) << ',' << r.iterations << ','
       << real(r.residual) << '\n';
}

inline void print_validation(std::ostream& out, const ValidationReport& rep) {
  out << std::left << std::setw(20) << "check" << std::setw(7) << "status"
      << std::setw(14) << "worst" << "where\n";
  for (const ValidationCheck& c : rep.checks) {
    out << std::left << std::setw(20) << c.name << std::setw(7)
        << (c.passed ? "ok" : "FAIL") << std::setw(14) << std::setprecision(3)
        << std::scientific << c.worst << std::defaultfloat;
    if (c.where >= 0) out << c.where;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << "quasi-uniformity ratio " << rep.quasi_uniformity_ratio
      << ", max bisection defect " << rep.max_bisection_defect << '\n';
}

inline int mesh_gen(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  const DualMesh m = make_mesh(c);
  const ValidationReport rep = validate_mesh(m);
  const auto path = output_path(c, "mesh.txt");
  save_mesh(m, path.string());
  out << "wrote " << path.string() << ": " << m.n_cells() << " cells ("
      << m.n_boundary_cells() << " boundary), " << m.n_vertices() << " vertices, "
      << m.n_edges() << " edges (" << m.n_boundary_edges() << " boundary)\n";
  print_validation(out, rep);
  return rep.ok() ? ok : check_failure;
}

inline int mesh_check(const Options& o, std::ostream& out) {
  if (o.mesh.empty() && o.config.empty())
    throw ConfigError("mesh-check needs --mesh or --config");
  const DualMesh m = make_mesh(resolve(o));
  const ValidationReport rep = validate_mesh(m);
  print_validation(out, rep);
  return rep.ok() ? ok : check_failure;
}

inline int verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = resolve(o);
  const DualMesh m = make_mesh(c);
  const CalculusReport rep = verify_calculus(m, c.mesh.seed, o.sets);
  out << "seed " << c.mesh.seed << ", " << o.sets << " random sets, "
      << (m.periodic ? "periodic" : "bounded") << " mesh with " << m.n_cells()
      << " cells\n";
  out << std::left << std::setw(42) << "identity" << std::setw(12) << "defect"
      << std::setw(10) << "tolerance" << "status\n";
  for (const IdentityResult& r : rep.identities)
    out << std::left << std::setw(42) << r.name << std::setw(12) << std::setprecision(3)
        << std::scientific << r.defect << std::setw(10) << std::setprecision(0)
        << r.tolerance << std::defaultfloat << (r.passed() ? "ok" : "FAIL") << '\n';
  for (const IdentityResult& r : rep.identities)
    if (!r.passed()) err << "identity failed: " << r.name << '\n';
  return rep.ok() ? ok : check_failure;
}

inline int run_command(const Options& o, std::ostream& out, std::ostream& err) {
  const Config c = resolve(o);
  const DualMesh m = make_mesh(c);
  const RunConfig rc = make_run_config(c, m);
  const State initial = make_initial_state(c, m);
  const double cfl = cfl_limit(initial, rc.physics, m);
  if (rc.dt > cfl)
    err << "warning: dt = " << rc.dt << " exceeds the advisory limit " << cfl << '\n';

  const std::string head = header("run", c);
  std::vector<char> name(32);
  auto sink = [&](const Snapshot& s) {
    if (!c.output.snapshots) return;
    std::snprintf(name.data(), name.size(), "snapshot_%06zu.csv", s.step);
    write_snapshot(output_path(c, name.data()), head, s, m);
  };
  const ConservationSeries series = run(initial, m, rc, sink);
  {
    std::ofstream os = open_output(output_path(c, "series.csv"));
    write_series(os, head, series);
  }
  const SeriesRow &a = series.front(), &b = series.back();
  auto drift = [](double x0, double x1) {
    return x0 != 0.0 ? std::abs(x1 - x0) / std::abs(x0) : std::abs(x1 - x0);
  };
  nlohmann::ordered_json j;
  j["scheme"] = c.time.scheme;
  j["integrator"] = c.time.integrator;
  j["steps"] = c.time.steps;
  j["dt"] = c.time.dt;
  j["t_final"] = b.t;
  j["cells"] = m.n_cells();
  j["seed"] = c.mesh.seed;
  j["solver_tol"] = c.solver.tol;
  j["mass_drift"] = drift(a.mass, b.mass);
  j["circulation_drift"] = std::abs(b.circulation - a.circulation);
  j["energy_drift"] = drift(a.energy, b.energy);
  j["enstrophy_drift"] = drift(a.enstrophy, b.enstrophy);
  j["energy_initial"] = a.energy;
  j["enstrophy_initial"] = a.enstrophy;
  const std::string summary = j.dump(2);
  {
    std::ofstream os = open_output(output_path(c, "summary.json"));
    os << summary << '\n';
  }
  out << summary << '\n';
  return ok;
}

inline int dispersion(const Options& o, std::ostream& out) {
  const Config c = resolve(o);
  const DualMesh m = make_mesh(c);
  const LinearizedSystem sys{c.physics.f0, c.physics.phibar, c.physics.g, &m};
  const DispersionResult r = dispersion_spectrum(sys);
  {
    std::ofstream os = open_output(output_path(c, "dispersion.csv"));
    os << header("dispersion", c) << "mode,lambda,omega_numeric,omega_zgrid,abs_err\n";
    for (const DispersionMode& md : r.modes)
      os << md.mode << ',' << real(md.lambda) << ',' << real(md.omega_numeric) << ','
         << real(md.omega_zgrid) << ',' << real(md.abs_err) << '\n';
  }
  const bool pass = r.max_abs_err < 1e-9 && r.zero_modes == r.expected_zero_modes &&
                    r.max_real_part <= 1e-10;
  out << "modes " << r.modes.size() << ", max |omega^2 - (f0^2 + g phibar lambda)| "
      << r.max_abs_err << ", zero modes " << r.zero_modes << " (expected "
      << r.expected_zero_modes << "), max |Re| " << r.max_real_part << '\n';
  return pass ? ok : check_failure;
}

}  // namespace detail

/// Parses `argv` and runs one subcommand. Returns the process exit code.
inline int main(int argc, const char* const* argv, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Hamiltonian shallow-water schemes on orthogonal dual meshes"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Config file");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--seed", o.seed, "Seed of every random draw");
    sub->add_option("--mesh", o.mesh, "Mesh file; overrides the [mesh] section");
  };
  auto timed = [&](CLI::App* sub) {
    sub->add_option("--dt", o.dt, "Time step");
    sub->add_option("--steps", o.steps, "Number of steps");
    sub->add_option("--scheme", o.scheme, "energy or energy-enstrophy")
        ->check(CLI::IsMember({"energy", "energy-enstrophy"}));
    sub->add_option("--tol", o.tol, "Elliptic solver tolerance");
  };
  CLI::App* gen = app.add_subcommand("mesh-gen", "Build a mesh from [mesh] and save it");
  CLI::App* check = app.add_subcommand("mesh-check", "Validate a mesh file");
  CLI::App* ver = app.add_subcommand("verify-calculus", "Run the discrete calculus suite");
  CLI::App* run = app.add_subcommand("run", "Integrate a configured initial state");
  CLI::App* disp = app.add_subcommand("dispersion", "Linear dispersion analysis");
  for (CLI::App* sub : {gen, check, ver, run, disp}) common(sub);
  timed(run);
  ver->add_option("--sets", o.sets, "Number of random field sets")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (*gen) return detail::mesh_gen(o, out);
    if (*check) return detail::mesh_check(o, out);
    if (*ver) return detail::verify(o, out, err);
    if (*run) return detail::run_command(o, out, err);
    return detail::dispersion(o, out);
  } catch (const MeshQualityError& e) {
    err << "mesh error: " << e.what();
    if (e.edge() >= 0) err << " (edge " << e.edge() << ")";
    err << '\n';
    return check_failure;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return solver_failure;
  } catch (const StateError& e) {
    err << "stability failure: " << e.what() << '\n';
    return solver_failure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return usage_error;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return usage_error;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << '\n';
    return usage_error;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return check_failure;
  }
}

}  // namespace hamswe::cli
