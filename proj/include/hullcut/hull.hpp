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

#include <span>

#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"

namespace hullcut {

/// Incremental quickhull. Points within hullEps (1e-9 x bbox diagonal) of a
/// facet plane are absorbed, so coplanar input yields merged-flat facets
/// without extra vertices. Throws DegenerateHull for flat/collinear input.
SolidMesh convex_hull(std::span<const Vec3> points);

inline SolidMesh convex_hull(const SolidMesh& mesh) { return convex_hull(mesh.vertices()); }

inline double hull_epsilon(std::span<const Vec3> points) {
  return Tolerances::kHullRel * bounding_box(points).diagonal();
}

}  // namespace hullcut
