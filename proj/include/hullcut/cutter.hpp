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
#include <span>
#include <vector>

#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"

namespace hullcut {

inline double cut_epsilon(const SolidMesh& mesh) {
  return Tolerances::kCutRel * mesh.bounds().diagonal();
}

struct TriangleSides {
  std::vector<std::size_t> negative;
  std::vector<std::size_t> positive;
  std::vector<std::size_t> crossing;
};

/// Vertices within `eps` of the plane count as on it. Triangles lying in the
/// plane go to the side their outward normal faces away from.
TriangleSides classify_triangles(const SolidMesh& mesh, const Plane& plane, double eps);
inline TriangleSides classify_triangles(const SolidMesh& mesh, const Plane& plane) {
  return classify_triangles(mesh, plane, cut_epsilon(mesh));
}

struct SplitTriangle {
  std::vector<std::array<Vec3, 3>> negative;
  std::vector<std::array<Vec3, 3>> positive;
  std::array<Vec3, 2> segment;  // ordered as the negative cap traverses it
};

/// Splits a triangle with vertices strictly on both sides of the plane.
/// Sub-triangles keep the input winding.
SplitTriangle split_crossing(const std::array<Vec3, 3>& tri, const Plane& plane, double eps = 0);

struct CrossSection {
  std::vector<std::vector<Vec2>> loops;  // outer loops CCW, holes CW
};

/// Chains directed segments end to start (within eps) into closed loops.
/// Throws OpenChain when an endpoint has no continuation.
CrossSection build_cross_section(std::span<const std::array<Vec2, 2>> segments, double eps);

/// Cross-section loops of a solid in the plane basis of plane_basis(normal).
CrossSection cross_section(const SolidMesh& mesh, const Plane& plane);

/// Constrained Delaunay triangulation of the even-odd interior of the loops.
/// Returns an empty list when the enclosed area is at most area_eps.
std::vector<std::array<Vec2, 3>> triangulate_cap(const CrossSection& section,
                                                 double area_eps = Tolerances::kAreaEps);

struct CutResult {
  SolidMesh negative_side;  // normal . x < offset
  SolidMesh positive_side;
  std::size_t cap_triangle_count = 0;
  Plane plane;  // the plane actually used
};

/// Splits a solid into two watertight solids with flat caps. Throws
/// EmptySide, OpenChain or TriangulationFailure.
CutResult cut(const SolidMesh& mesh, const Plane& plane);

/// cut() with up to three retries at offsets perturbed by multiples of
/// 3 * cut_epsilon when the cross-section is numerically broken.
CutResult cut_with_retry(const SolidMesh& mesh, const Plane& plane);

}  // namespace hullcut
