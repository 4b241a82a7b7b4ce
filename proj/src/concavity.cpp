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

#include "hullcut/concavity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hullcut/hull.hpp"
#include "hullcut/spatial.hpp"

namespace hullcut {
namespace {

enum Stream : std::uint64_t { kComponentSurface = 1, kHullSurface = 2, kHullInterior = 3 };

constexpr double kGapRoundoff = 1e-12;  // relative to hull volume

std::vector<std::array<Vec3, 3>> corners_of(const SolidMesh& mesh) {
  std::vector<std::array<Vec3, 3>> tris(mesh.triangle_count());
  for (std::size_t t = 0; t < tris.size(); ++t) tris[t] = mesh.corners(t);
  return tris;
}

}  // namespace

double directed_hausdorff(std::span<const Vec3> points, const TriangleIndex& target) {
  double worst = 0;
  for (const Vec3& p : points) worst = std::max(worst, target.distance(p));
  return worst;
}

double directed_hausdorff(std::span<const Vec3> points, const SolidMesh& target) {
  return directed_hausdorff(points, TriangleIndex(target));
}

double hb(const SolidMesh& component, const SolidMesh& hull, const ConcavityParams& params) {
  const PointSet on_component =
      sample_surface(component, params.surface_density, derive_seed(params.seed, kComponentSurface));
  const PointSet on_hull =
      sample_surface(hull, params.surface_density, derive_seed(params.seed, kHullSurface));

  const TriangleIndex hull_index(hull);
  double forward = 0;
  std::size_t shells = 0;
  auto labels = shell_labels(component, &shells);
  if (shells <= 1) {
    forward = directed_hausdorff(on_component.points, hull_index);
  } else {
    // Locate each sample's own shell by nearest triangle, then skip samples
    // that also lie on another shell.
    const TriangleIndex by_shell(corners_of(component), labels);
    const double tol = 1e-7 * component.bounds().diagonal();
    for (const Vec3& p : on_component.points) {
      const auto own = by_shell.nearest(p);
      if (by_shell.nearest_with_other_label(p, labels[own.triangle]).distance <= tol) continue;
      forward = std::max(forward, hull_index.distance(p));
    }
  }
  const double backward = directed_hausdorff(on_hull.points, TriangleIndex(component));
  return std::max(forward, backward);
}

double rv(const SolidMesh& component, const SolidMesh& hull) {
  const double vh = signed_volume(hull);
  double gap = vh - signed_volume(component);
  // Below summation round-off the gap is noise; the cube root would inflate it.
  if (gap <= kGapRoundoff * vh) gap = 0;
  return std::cbrt(3 * gap / (4 * std::numbers::pi));
}

double rv_concavity(const SolidMesh& component) {
  try {
    return rv(component, convex_hull(component));
  } catch (const GeometryError& e) {
    if (e.code() == ErrorCode::DegenerateHull) return 0;
    throw;
  }
}

double hi_oracle(const SolidMesh& component, const SolidMesh& hull, const ConcavityParams& params) {
  const TriangleIndex hull_index(hull);
  const PointSet inside_hull = sample_interior(hull, hull_index, params.interior_count,
                                               derive_seed(params.seed, kHullInterior));
  const TriangleIndex solid(component);
  double worst = 0;
  for (const Vec3& q : inside_hull.points) {
    const double d = solid.distance(q);
    if (d <= worst || solid.contains(q)) continue;
    worst = d;
  }
  return worst;
}

ConcavityReport concavity_fast(const SolidMesh& component, const SolidMesh& hull,
                               const ConcavityParams& params) {
  ConcavityReport r;
  r.hb = hb(component, hull, params);
  r.rv = rv(component, hull);
  r.fast = std::max(r.hb, params.k * r.rv);
  return r;
}

ConcavityReport concavity_fast(const SolidMesh& component, const ConcavityParams& params) {
  return concavity_fast(component, convex_hull(component), params);
}

ConcavityReport concavity_exact(const SolidMesh& component, const ConcavityParams& params) {
  const SolidMesh hull = convex_hull(component);
  ConcavityReport r = concavity_fast(component, hull, params);
  r.hi_oracle = hi_oracle(component, hull, params);
  r.exact = std::max(r.hb, *r.hi_oracle);
  return r;
}

double hausdorff_bound_margin(const SolidMesh& component, const ConcavityParams& params) {
  const ConcavityReport r = concavity_exact(component, params);
  return std::sqrt(2.0) * std::max(r.hb, r.rv) - *r.exact;
}

}  // namespace hullcut
