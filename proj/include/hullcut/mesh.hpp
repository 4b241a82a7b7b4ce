// Copyright 2026 The hullcut Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hullcut/error.hpp"
#include "hullcut/geometry.hpp"

namespace hullcut {

using Triangle = std::array<std::uint32_t, 3>;

/// Unvalidated indexed triangle soup, as read from disk or assembled by an
/// algorithm before canonicalization.
struct TriangleSoup {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
};

/// Closed, consistently oriented 2-manifold triangle mesh with positive
/// volume. Only obtainable through validate_manifold() or from operations
/// that preserve the invariants, so holding one is proof of validity.
class SolidMesh {
 public:
  SolidMesh() = default;

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }
  bool empty() const { return triangles_.empty(); }

  std::array<Vec3, 3> corners(std::size_t t) const {
    const Triangle& tri = triangles_[t];
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
  }

  Box3 bounds() const { return bounding_box(vertices_); }
  TriangleSoup soup() const { return {vertices_, triangles_}; }

  /// Applies a similarity transform. Orientation is preserved as long as the
  /// rotation is proper (det = +1), which Transform guarantees.
  SolidMesh transformed(const Transform& xf) const;
  SolidMesh transformed_inverse(const Transform& xf) const;

  /// Concatenates shells without welding; used for merged components whose
  /// pieces touch along a shared planar face.
  static SolidMesh concatenate(const SolidMesh& a, const SolidMesh& b);

  /// Wraps data already known to satisfy every invariant (hull output,
  /// shells of a valid mesh). Not checked.
  static SolidMesh from_trusted(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

 private:
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
};

/// Scale-relative tolerances. Values are in units normalized to a max
/// bounding-box extent of 2; `for_extent` rescales them to model units.
struct Tolerances {
  static constexpr double kHullRel = 1e-9;   // x bbox diagonal
  static constexpr double kCutRel = 1e-9;    // x bbox diagonal
  static constexpr double kAreaEps = 1e-12;  // normalized area
  static constexpr double kVolumeEps = 1e-8; // normalized volume
  static constexpr double kRayEps = 1e-9;
};

/// Canonicalizes a soup into a SolidMesh: drops unreferenced vertices, checks
/// edge valence, orientation, degeneracy and volume, and flips winding
/// globally when the signed volume is negative.
SolidMesh validate_manifold(const TriangleSoup& soup);

double signed_volume(const SolidMesh& mesh);
double signed_volume(std::span<const Vec3> vertices, std::span<const Triangle> triangles);
double surface_area(const SolidMesh& mesh);
double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// Splits a mesh into shells by vertex connectivity. Inverted shells (voids)
/// are attached to the smallest positive shell containing them, so every
/// returned mesh has positive volume.
std::vector<SolidMesh> connected_components(const SolidMesh& mesh);

/// Per-triangle shell label (0-based, in order of first triangle).
std::vector<std::uint32_t> shell_labels(const SolidMesh& mesh, std::size_t* shell_count = nullptr);

/// Euler characteristic V - E + F.
long euler_characteristic(const SolidMesh& mesh);

}  // namespace hullcut
