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

#include "hamswe/config.hpp"
#include "hamswe/dispersion.hpp"
#include "hamswe/dynamics.hpp"
#include "hamswe/elliptic.hpp"
#include "hamswe/error.hpp"
#include "hamswe/fields.hpp"
#include "hamswe/mesh.hpp"
#include "hamswe/mesh_io.hpp"
#include "hamswe/minres.hpp"
#include "hamswe/operators.hpp"
#include "hamswe/random.hpp"
#include "hamswe/timeloop.hpp"
#include "hamswe/verify.hpp"
#include "hamswe/voronoi.hpp"
