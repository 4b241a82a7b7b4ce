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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hullcut/mesh.hpp"

// Procedural watertight solids used throughout the test suites.
namespace hullcut::shapes {

SolidMesh box(const Vec3& lo, const Vec3& hi);
inline SolidMesh unit_cube() { return box({0, 0, 0}, {1, 1, 1}); }
SolidMesh regular_tetrahedron();
SolidMesh icosphere(double radius, int subdivisions);
SolidMesh torus(double major, double minor, int major_segments = 32, int minor_segments = 16);

/// Surface of revolution about +z. An open profile must start and end on
/// the axis (r = 0); a closed profile must stay off the axis.
SolidMesh lathe(const std::vector<std::pair<double, double>>& profile_rz, int segments,
                bool closed = false);

/// Union of filled cells of a rectilinear grid; cell (i,j,k) spans
/// [xs[i], xs[i+1]] x [ys[j], ys[j+1]] x [zs[k], zs[k+1]].
SolidMesh grid_solid(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<double>& zs, const std::vector<bool>& filled);

/// Unit cube minus the [0.5,1]x[0.5,1] quadrant, full height.
SolidMesh l_prism();
/// 2x1x1 box with a 0.4-wide, 0.5-deep slot across the top.
SolidMesh notched_box();
/// Extruded hollow square: outer 2x2, inner 1x1, height 0.5, centered.
SolidMesh square_frame();
SolidMesh dumbbell();
SolidMesh bottle_cap();
/// Hollow sphere with a circular opening at the north pole.
SolidMesh open_shell(double outer = 1.0, double inner = 0.9, double opening = 0.2,
                     int segments = 48);
/// Unit sphere with a blind axial hole drilled from the north pole.
SolidMesh drilled_sphere(double hole_radius = 0.1, double depth = 0.8, int segments = 48);
/// Bowl: outer hemisphere minus inner hemisphere, flat open rim at z = 0.
SolidMesh hollow_hemisphere(double outer = 1.0, double inner = 0.9, int segments = 48);
/// Cube [0,3]^3 with an inverted inner cube [1,2]^3 (a void).
SolidMesh cube_with_void();
/// Random union of grid cells, retried until manifold and connected.
SolidMesh random_csg(std::uint64_t seed);

struct NamedShape {
  std::string name;
  SolidMesh mesh;
};

/// The 20-shape suite used for metric property sweeps.
std::vector<NamedShape> metric_suite();
/// The 6 non-convex primitives used for planner comparisons.
std::vector<NamedShape> planner_suite();

}  // namespace hullcut::shapes
