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

// Prints the inertia-gravity frequencies of the linearized scheme next to
// the Z-grid relation for the lowest modes of a periodic mesh.

#include <algorithm>
#include <cstdio>

#include "hamswe/dispersion.hpp"
#include "hamswe/mesh.hpp"

using namespace hamswe;

int main() {
  const DualMesh m = build_periodic_quad_mesh(12, 12, 1.0, 1.0);
  const LinearizedSystem sys{1.0, 1.0, 1.0, &m};
  const DispersionResult r = dispersion_spectrum(sys);
  std::printf("%6s %12s %14s %14s %10s\n", "mode", "lambda", "omega", "omega_zgrid", "error");
  for (std::size_t k = 0; k < std::min<std::size_t>(12, r.modes.size()); ++k) {
    const DispersionMode& md = r.modes[k];
    std::printf("%6zu %12.5f %14.10f %14.10f %10.2e\n", md.mode, md.lambda,
                md.omega_numeric, md.omega_zgrid, md.abs_err);
  }
  std::printf("zero modes %zu of %zu expected, max error %.2e\n", r.zero_modes,
              r.expected_zero_modes, r.max_abs_err);
}
