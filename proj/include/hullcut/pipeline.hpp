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

#include <cstddef>
#include <span>
#include <vector>

#include "hullcut/concavity.hpp"
#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"
#include "hullcut/planner.hpp"

namespace hullcut {

enum class PlannerKind { Mcts, Greedy };

struct DecomposeParams {
  double epsilon = 0.05;  // normalized units
  ConcavityParams concavity;
  PlannerParams planner;
  PlannerKind planner_kind = PlannerKind::Mcts;
  bool merge = true;
  std::size_t max_components = 512;
  bool exact_concavity = false;  // fill ConcavityReport::hi_oracle/exact

  void validate() const;
};

struct Part {
  SolidMesh component;
  SolidMesh hull;
  ConcavityReport report;  // normalized units
};

struct DecomposeStats {
  std::size_t components = 0;
  std::size_t cuts = 0;
  std::size_t merges = 0;
  double wall_seconds = 0;
  bool cap_exceeded = false;
};

struct Decomposition {
  std::vector<Part> parts;  // original frame
  Transform transform;      // normalized -> original
  DecomposeStats stats;
};

/// Uniform scale to max extent 2 centered at the origin, optionally in the
/// principal frame. Returned transform maps normalized to original.
Transform normalizing_transform(const SolidMesh& mesh, bool use_pca);

/// Recursive plane-cut decomposition. Throws GeometryError for invalid
/// parameters only; cap overruns are reported in stats.
Decomposition decompose(const SolidMesh& mesh, const DecomposeParams& params);

/// Greedily merges adjacent parts while the best merged part stays within
/// epsilon. Parts are in a common frame; `contact_tol` decides adjacency.
/// Returns the number of merges performed.
std::size_t merge_components(std::vector<Part>& parts, double epsilon,
                             const ConcavityParams& params, double contact_tol);

/// Sampled estimate of max_i Concavity(S ∩ hull_i).
double score_decomposition(const SolidMesh& original, std::span<const SolidMesh> hulls,
                           const ConcavityParams& params);

}  // namespace hullcut
