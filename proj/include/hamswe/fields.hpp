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
#include <span>
#include <string>
#include <vector>

#include "hamswe/error.hpp"

namespace hamswe {

namespace location {
struct Cell {
  static constexpr const char* name = "cell";
};
struct Vertex {
  static constexpr const char* name = "vertex";
};
struct NormalEdge {
  static constexpr const char* name = "normal-edge";
};
struct TangentialEdge {
  static constexpr const char* name = "tangential-edge";
};
}  // namespace location

/// A discrete scalar (or single vector component) attached to one kind of
/// mesh element. The tag keeps cell, vertex and edge data from being mixed.
template <class Location>
class Field {
 public:
  using location_type = Location;

  Field() = default;
  explicit Field(std::size_t n, double value = 0.0) : values_(n, value) {}
  explicit Field(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  Field& operator+=(const Field& other) {
    check_same(other);
    for (std::size_t k = 0; k < size(); ++k) values_[k] += other.values_[k];
    return *this;
  }
  Field& operator-=(const Field& other) {
    check_same(other);
    for (std::size_t k = 0; k < size(); ++k) values_[k] -= other.values_[k];
    return *this;
  }
  Field& operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator-(Field a) { return a *= -1.0; }

  bool operator==(const Field&) const = default;

  double max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  void check_same(const Field& other) const {
    if (other.size() != size())
      throw InvalidArgument(std::string(Location::name) +
                            " field length mismatch");
  }
  std::vector<double> values_;
};

using CellField = Field<location::Cell>;
using VertexField = Field<location::Vertex>;
using NormalEdgeField = Field<location::NormalEdge>;
using TangentialEdgeField = Field<location::TangentialEdge>;
/// Direction-free edge values (q̂, φ̂, ψ̂). Stored like a tangential field.
using EdgeScalar = TangentialEdgeField;

/// Componentwise product of an edge scalar with an edge vector component.
template <class Location>
Field<Location> scale_by(const EdgeScalar& w, const Field<Location>& f) {
  if (w.size() != f.size())
    throw InvalidArgument("edge weight length mismatch");
  Field<Location> out(f.size());
  for (std::size_t e = 0; e < f.size(); ++e) out[e] = w[e] * f[e];
  return out;
}

/// Componentwise product of two edge components, returned as an edge scalar.
template <class A, class B>
EdgeScalar edge_product(const Field<A>& a, const Field<B>& b) {
  if (a.size() != b.size())
    throw InvalidArgument("edge product length mismatch");
  EdgeScalar out(a.size());
  for (std::size_t e = 0; e < a.size(); ++e) out[e] = a[e] * b[e];
  return out;
}

/// Reinterpret edge values at another edge location (same numbers).
template <class To, class From>
Field<To> relabel(const Field<From>& f) {
  return Field<To>(f.vector());
}

}  // namespace hamswe
