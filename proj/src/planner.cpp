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

#include "hullcut/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hullcut/concavity.hpp"
#include "hullcut/cutter.hpp"
#include "hullcut/error.hpp"
#include "hullcut/sampling.hpp"

namespace hullcut {
namespace {

constexpr double kTieTol = 1e-12;
constexpr int kMaxBreakpointProbes = 32;

std::size_t worst_index(const std::vector<ScoredPart>& parts) {
  std::size_t w = 0;
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i].rv > parts[w].rv) w = i;
  return w;
}

double worst_value(const std::vector<ScoredPart>& parts) {
  double w = 0;
  for (const ScoredPart& p : parts) w = std::max(w, p.rv);
  return w;
}

std::pair<double, double> projection_range(const SolidMesh& mesh, const Vec3& n) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Vec3& v : mesh.vertices()) {
    const double d = dot(n, v);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

// Replaces parts[w] by the pieces of its cut.
std::vector<ScoredPart> apply_cut(const std::vector<ScoredPart>& parts, std::size_t w,
                                  std::vector<ScoredPart> pieces) {
  std::vector<ScoredPart> out;
  out.reserve(parts.size() + pieces.size() - 1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (i != w) out.push_back(parts[i]);
  for (ScoredPart& p : pieces) out.push_back(std::move(p));
  return out;
}

struct Node {
  std::vector<ScoredPart> parts;
  double worst = 0;
  Plane plane;
  int parent = -1;
  int depth = 0;
  int visits = 0;
  double value = -std::numeric_limits<double>::infinity();
  bool seeded = false;
  std::vector<Plane> untried;
  std::vector<int> children;
  // Root children only: best full path seen through this child.
  double best_q = -std::numeric_limits<double>::infinity();
  PlanePath best_path;
};

}  // namespace

void PlannerParams::validate() const {
  if (m < 1 || iterations < 1 || depth < 1 || refine_iterations < 0)
    throw std::invalid_argument("planner parameters out of range");
  if (exploration && *exploration < 0) throw std::invalid_argument("negative exploration constant");
}

std::vector<Plane> raw_candidates(const SolidMesh& component, int m, const Transform& axes) {
  std::vector<Plane> out;
  for (int a = 0; a < 3; ++a) {
    const Vec3 n = axes.axis(a);
    const auto [lo, hi] = projection_range(component, n);
    if (!(hi > lo)) continue;
    for (int i = 1; i <= m; ++i) out.push_back({n, lo + (hi - lo) * i / (m + 1)});
  }
  return out;
}

std::vector<Plane> candidate_planes(const SolidMesh& component, int m, const Transform& axes) {
  std::vector<Plane> out;
  for (const Plane& p : raw_candidates(component, m, axes)) {
    try {
      cut_with_retry(component, p);
    } catch (const GeometryError& e) {
      if (e.code() == ErrorCode::EmptySide) continue;
    }
    out.push_back(p);
  }
  if (out.empty()) throw GeometryError(ErrorCode::NoValidCandidates, "no candidate plane cuts the component");
  return out;
}

std::vector<Plane> snap_to_vertices(const SolidMesh& component, std::vector<Plane> planes, int m) {
  std::vector<Plane> out;
  for (Plane p : planes) {
    const auto [lo, hi] = projection_range(component, p.normal);
    const double half = 0.5 * (hi - lo) / (m + 1);
    double best = p.offset, gap = half * (1 + 1e-9);
    for (const Vec3& v : component.vertices()) {
      const double o = dot(p.normal, v);
      if (std::abs(o - p.offset) < gap && o > lo && o < hi) {
        gap = std::abs(o - p.offset);
        best = o;
      }
    }
    p.offset = best;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<Plane> search_candidates(const SolidMesh& component, const PlannerParams& params) {
  std::vector<Plane> raw = raw_candidates(component, params.m, Transform{});
  return params.snap_candidates ? snap_to_vertices(component, std::move(raw), params.m) : raw;
}

std::vector<ScoredPart> cut_pieces(const SolidMesh& component, const Plane& plane,
                                   bool separate_shells) {
  CutResult r = cut_with_retry(component, plane);
  std::vector<ScoredPart> out;
  for (SolidMesh* half : {&r.negative_side, &r.positive_side}) {
    if (separate_shells) {
      for (SolidMesh& shell : connected_components(*half)) {
        const double c = rv_concavity(shell);
        out.push_back({std::move(shell), c});
      }
    } else {
      const double c = rv_concavity(*half);
      out.push_back({std::move(*half), c});
    }
  }
  return out;
}

double one_step_cost(const SolidMesh& component, const Plane& plane, bool separate_shells) {
  return worst_value(cut_pieces(component, plane, separate_shells));
}

Plane greedy_plan(const SolidMesh& component, const PlannerParams& params) {
  std::optional<Plane> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Plane& p : search_candidates(component, params)) {
    double c;
    try {
      c = one_step_cost(component, p, params.separate_shells);
    } catch (const GeometryError&) {
      continue;
    }
    if (!best || c < best_cost - kTieTol) {
      best = p;
      best_cost = c;
    }
  }
  if (!best) throw GeometryError(ErrorCode::NoValidCandidates, "no candidate plane cuts the component");
  return *best;
}

PlanePath default_policy(std::vector<ScoredPart> parts, int steps, bool separate_shells) {
  PlanePath path;
  for (int s = 0; s < steps; ++s) {
    const std::size_t w = worst_index(parts);
    const SolidMesh& target = parts[w].mesh;
    const Vec3 mid = target.bounds().center();
    std::optional<Plane> chosen;
    std::vector<ScoredPart> chosen_pieces;
    double chosen_cost = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
      Vec3 n{};
      n[a] = 1;
      const Plane p{n, mid[a]};
      if (!chosen) chosen = p;  // recorded even if nothing cuts
      try {
        std::vector<ScoredPart> pieces = cut_pieces(target, p, separate_shells);
        const double c = worst_value(pieces);
        if (chosen_pieces.empty() || c < chosen_cost - kTieTol) {
          chosen = p;
          chosen_cost = c;
          chosen_pieces = std::move(pieces);
        }
      } catch (const GeometryError&) {
      }
    }
    if (!chosen_pieces.empty()) parts = apply_cut(parts, w, std::move(chosen_pieces));
    path.planes.push_back(*chosen);
    path.worst.push_back(worst_value(parts));
  }
  return path;
}

double quality(std::span<const double> worst) {
  if (worst.empty()) return 0;
  double s = 0;
  for (double w : worst) s -= w;
  return s / static_cast<double>(worst.size());
}

double ucb(double q, int visits, int parent_visits, double c) {
  return q + c * std::sqrt(2.0 * std::log(static_cast<double>(parent_visits)) / visits);
}

PlanResult mcts_plan(const SolidMesh& component, const PlannerParams& params,
                     double root_concavity, SearchTrace* trace) {
  params.validate();
  const int d = params.depth;
  const double c = params.exploration.value_or(root_concavity / d);
  Rng rng(derive_seed(params.seed, 0x6d637473));

  std::vector<Node> nodes(1);
  nodes[0].parts.push_back({component, rv_concavity(component)});
  nodes[0].worst = nodes[0].parts[0].rv;

  // Expands one untried plane of v's worst part; -1 when none cuts.
  auto expand = [&](int v) -> int {
    if (!nodes[v].seeded) {
      const std::size_t w = worst_index(nodes[v].parts);
      nodes[v].untried = search_candidates(nodes[v].parts[w].mesh, params);
      nodes[v].seeded = true;
    }
    while (!nodes[v].untried.empty()) {
      std::vector<Plane>& untried = nodes[v].untried;
      const std::size_t pick = rng.below(untried.size());
      const Plane plane = untried[pick];
      untried.erase(untried.begin() + static_cast<std::ptrdiff_t>(pick));
      const std::size_t w = worst_index(nodes[v].parts);
      std::vector<ScoredPart> pieces;
      try {
        pieces = cut_pieces(nodes[v].parts[w].mesh, plane, params.separate_shells);
      } catch (const GeometryError&) {
        continue;  // pruned for good
      }
      Node child;
      child.parts = apply_cut(nodes[v].parts, w, std::move(pieces));
      child.worst = worst_value(child.parts);
      child.plane = plane;
      child.parent = v;
      child.depth = nodes[v].depth + 1;
      nodes.push_back(std::move(child));
      const int id = static_cast<int>(nodes.size()) - 1;
      nodes[v].children.push_back(id);
      return id;
    }
    return -1;
  };

  for (int it = 0; it < params.iterations; ++it) {
    std::vector<int> path{0};
    int v = 0;
    while (nodes[v].depth < d) {
      const int child = expand(v);
      if (child >= 0) {
        path.push_back(child);
        break;
      }
      if (nodes[v].children.empty()) break;
      int best = -1;
      double best_score = -std::numeric_limits<double>::infinity();
      for (int ch : nodes[v].children) {
        const double s = ucb(nodes[ch].value, nodes[ch].visits, nodes[v].visits, c);
        if (best < 0 || s > best_score) {
          best = ch;
          best_score = s;
        }
      }
      v = best;
      path.push_back(v);
    }
    if (path.size() == 1 && nodes[0].children.empty()) break;  // nothing cuts the root

    const int leaf = path.back();
    PlanePath full;
    for (std::size_t i = 1; i < path.size(); ++i) {
      full.planes.push_back(nodes[path[i]].plane);
      full.worst.push_back(nodes[path[i]].worst);
    }
    const PlanePath rollout = default_policy(nodes[leaf].parts, d - nodes[leaf].depth,
                                             params.separate_shells);
    full.planes.insert(full.planes.end(), rollout.planes.begin(), rollout.planes.end());
    full.worst.insert(full.worst.end(), rollout.worst.begin(), rollout.worst.end());
    const double q = quality(full.worst);

    for (int id : path) {
      nodes[id].visits += 1;
      nodes[id].value = std::max(nodes[id].value, q);
    }
    if (path.size() > 1) {
      Node& first = nodes[path[1]];
      if (q > first.best_q) {
        first.best_q = q;
        first.best_path = std::move(full);
      }
    }
    if (trace) {
      trace->paths.push_back(path);
      trace->qualities.push_back(q);
    }
  }

  if (nodes[0].children.empty())
    throw GeometryError(ErrorCode::NoValidCandidates, "no candidate plane cuts the component");
  int chosen = nodes[0].children.front();
  for (int ch : nodes[0].children)
    if (nodes[ch].value > nodes[chosen].value) chosen = ch;

  if (trace) {
    trace->exploration = c;
    trace->root_children = nodes[0].children;
    trace->nodes.clear();
    for (const Node& n : nodes)
      trace->nodes.push_back({n.parent, n.depth, n.visits, n.value, static_cast<int>(n.children.size())});
  }
  return {nodes[chosen].plane, nodes[chosen].best_path};
}

PlanePath replay_path(const SolidMesh& component, std::span<const Plane> planes,
                      bool separate_shells) {
  std::vector<ScoredPart> parts{{component, rv_concavity(component)}};
  PlanePath out;
  for (const Plane& p : planes) {
    const std::size_t w = worst_index(parts);
    try {
      parts = apply_cut(parts, w, cut_pieces(parts[w].mesh, p, separate_shells));
    } catch (const GeometryError&) {
    }
    out.planes.push_back(p);
    out.worst.push_back(worst_value(parts));
  }
  return out;
}

Plane refine_plane(const SolidMesh& component, const PlanePath& path, const PlannerParams& params) {
  if (path.planes.empty()) throw std::invalid_argument("empty plane path");
  const Plane original = path.planes.front();
  if (params.refine_iterations == 0) return original;

  std::vector<Plane> planes = path.planes;
  auto score = [&](double offset) -> std::optional<double> {
    planes[0].offset = offset;
    // A first plane that does not cut makes the probe invalid.
    try {
      cut_with_retry(component, planes[0]);
    } catch (const GeometryError&) {
      return std::nullopt;
    }
    return quality(replay_path(component, planes, params.separate_shells).worst);
  };

  const auto [lo_all, hi_all] = projection_range(component, original.normal);
  const double half = 0.5 * (hi_all - lo_all) / (params.m + 1);
  const double lo = original.offset - half, hi = original.offset + half;

  Plane best = original;
  double best_q = score(original.offset).value_or(-std::numeric_limits<double>::infinity());
  auto consider = [&](double offset) -> double {
    const std::optional<double> q = score(offset);
    if (!q) return -std::numeric_limits<double>::infinity();
    if (*q > best_q) {
      best_q = *q;
      best.offset = offset;
    }
    return *q;
  };

  // Vertex offsets are where the section changes shape; probe those first.
  std::vector<double> breaks;
  for (const Vec3& v : component.vertices()) {
    const double o = dot(original.normal, v);
    if (o >= lo && o <= hi && o != original.offset) breaks.push_back(o);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::stable_sort(breaks.begin(), breaks.end(), [&](double a, double b) {
    return std::abs(a - original.offset) < std::abs(b - original.offset);
  });
  if (breaks.size() > kMaxBreakpointProbes) breaks.resize(kMaxBreakpointProbes);
  for (double o : breaks) consider(o);

  double a = lo, b = hi;
  for (int i = 0; i < params.refine_iterations; ++i) {
    const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
    if (consider(m1) < consider(m2))
      a = m1;
    else
      b = m2;
  }
  return best;
}

}  // namespace hullcut
