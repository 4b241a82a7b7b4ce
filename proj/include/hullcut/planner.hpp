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
#include <vector>

#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"

namespace hullcut {

struct PlannerParams {
  int m = 20;           // candidates per axis
  int iterations = 500;
  int depth = 4;
  std::optional<double> exploration;  // fixed c; unset means root concavity / depth
  std::uint64_t seed = 0;
  bool use_pca = false;  // applied once by the pipeline when normalizing
  int refine_iterations = 15;
  bool separate_shells = true;  // split cut halves into connected shells
  bool snap_candidates = true;  // see snap_to_vertices

  void validate() const;
};

struct PlanePath {
  std::vector<Plane> planes;
  std::vector<double> worst;  // worst R_v after each step
};

struct PlanResult {
  Plane plane;
  PlanePath path;
};

/// A component and its cached R_v.
struct ScoredPart {
  SolidMesh mesh;
  double rv = 0;
};

/// m offsets per axis of `axes`, strictly inside the component's extent
/// along that axis. Planes whose trial cut reports EmptySide are dropped.
/// Throws NoValidCandidates when nothing survives.
std::vector<Plane> candidate_planes(const SolidMesh& component, int m, const Transform& axes);

/// Same spacing, without trial cuts. Used by the search, which discovers
/// empty sides lazily.
std::vector<Plane> raw_candidates(const SolidMesh& component, int m, const Transform& axes);

/// Moves each plane to the nearest vertex offset along its normal within
/// half a candidate spacing, so features between grid offsets can be cut
/// exactly. Duplicates after snapping are dropped.
std::vector<Plane> snap_to_vertices(const SolidMesh& component, std::vector<Plane> planes, int m);

/// Candidates as searched: raw_candidates with the identity frame, snapped
/// when params.snap_candidates is set.
std::vector<Plane> search_candidates(const SolidMesh& component, const PlannerParams& params);

/// Cuts and splits into scored pieces. Throws the cutter's errors.
std::vector<ScoredPart> cut_pieces(const SolidMesh& component, const Plane& plane,
                                   bool separate_shells);

/// max R_v over the pieces of the cut.
double one_step_cost(const SolidMesh& component, const Plane& plane, bool separate_shells = true);

/// Throws NoValidCandidates when every candidate fails to cut.
Plane greedy_plan(const SolidMesh& component, const PlannerParams& params);

/// Rollout: `steps` times, cut the worst component at the best of its three
/// bounding-box mid-planes. Works on a copy.
PlanePath default_policy(std::vector<ScoredPart> parts, int steps, bool separate_shells = true);

/// Mean of the negated per-step worst concavities.
double quality(std::span<const double> worst);

double ucb(double q, int visits, int parent_visits, double c);

/// Optional search record for inspection in tests.
struct SearchTrace {
  struct Node {
    int parent = -1;
    int depth = 0;
    int visits = 0;
    double value = 0;
    int children = 0;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> paths;  // node ids root..leaf per iteration
  std::vector<double> qualities;        // per iteration
  std::vector<int> root_children;       // in expansion order
  double exploration = 0;
};

/// Throws NoValidCandidates when no root plane cuts the component.
PlanResult mcts_plan(const SolidMesh& component, const PlannerParams& params,
                     double root_concavity, SearchTrace* trace = nullptr);

/// Applies path planes in order, each to the current worst component.
/// Steps whose cut fails repeat the previous worst value.
PlanePath replay_path(const SolidMesh& component, std::span<const Plane> planes,
                      bool separate_shells = true);

/// Searches the offset of the first plane within half a candidate spacing,
/// holding the remaining planes fixed. Returns the input plane unless a probe
/// strictly improves quality.
Plane refine_plane(const SolidMesh& component, const PlanePath& path, const PlannerParams& params);

}  // namespace hullcut
