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
#include <optional>
#include <span>

#include "hullcut/mesh.hpp"
#include "hullcut/sampling.hpp"

namespace hullcut {

class TriangleIndex;

struct ConcavityParams {
  double surface_density = 3000;        // points per unit area
  std::size_t interior_count = 100000;  // oracle only
  double k = 0.3;
  std::uint64_t seed = 0;
};

struct ConcavityReport {
  double hb = 0;
  double rv = 0;
  std::optional<double> hi_oracle;
  double fast = 0;
  std::optional<double> exact;
};

/// Spacing of surface samples at the given density; the error budget of
/// every sampled metric.
inline double sampling_tolerance(double density) { return 2.0 / std::sqrt(density); }

/// max over points of the distance to the nearest target triangle.
double directed_hausdorff(std::span<const Vec3> points, const TriangleIndex& target);
double directed_hausdorff(std::span<const Vec3> points, const SolidMesh& target);
inline double directed_hausdorff(const PointSet& points, const SolidMesh& target) {
  return directed_hausdorff(points.points, target);
}

/// Symmetric boundary Hausdorff distance between a component and its hull.
/// Multi-shell components (merged parts) ignore samples on faces shared
/// between shells, which lie inside the solid.
double hb(const SolidMesh& component, const SolidMesh& hull, const ConcavityParams& params);

double rv(const SolidMesh& component, const SolidMesh& hull);

/// Hull-interior to solid distance (solid includes its boundary).
double hi_oracle(const SolidMesh& component, const SolidMesh& hull, const ConcavityParams& params);

ConcavityReport concavity_fast(const SolidMesh& component, const ConcavityParams& params);
ConcavityReport concavity_fast(const SolidMesh& component, const SolidMesh& hull,
                               const ConcavityParams& params);
ConcavityReport concavity_exact(const SolidMesh& component, const ConcavityParams& params);

/// R_v alone, as used inside the plane search. Zero for flat components.
double rv_concavity(const SolidMesh& component);

/// sqrt(2) * max(hb, rv) - max(hb, hi_oracle); non-negative up to sampling error.
double hausdorff_bound_margin(const SolidMesh& component, const ConcavityParams& params);

}  // namespace hullcut
