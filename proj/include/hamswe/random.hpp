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

#include <cstdint>
#include <vector>

#include "hamswe/fields.hpp"

namespace hamswe {

/// 64-bit linear congruential generator used for every seeded random field.
///
///   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
///   uniform() = (state >> 11) * 2^-53            in [0, 1)
///
/// The constants are Knuth's MMIX multiplier and increment. The seed is the
/// initial state. Defect tables printed by the CLI are reproducible from it.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  template <class Location>
  Field<Location> field(std::size_t n, double lo = -1.0, double hi = 1.0) {
    Field<Location> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = uniform(lo, hi);
    return f;
  }

 private:
  std::uint64_t state_;
};

}  // namespace hamswe
