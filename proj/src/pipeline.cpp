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

#include "hullcut/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>

#include "hullcut/cutter.hpp"
#include "hullcut/error.hpp"
#include "hullcut/hull.hpp"
#include "hullcut/pca.hpp"
#include "hullcut/sampling.hpp"
#include "hullcut/spatial.hpp"

namespace hullcut {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kOnSurfaceRel = 1e-7;  // x bbox diagonal

enum : std::uint64_t {
  kStreamMerge = 0x6d657267,
  kStreamScoreSolid = 0x73636f31,
  kStreamScoreHull = 0x73636f32,
  kStreamScoreInterior = 0x73636f33,
};

ConcavityReport evaluate(const SolidMesh& component, const SolidMesh& hull,
                         const ConcavityParams& params, bool exact) {
  ConcavityReport r = concavity_fast(component, hull, params);
  if (exact) {
    r.hi_oracle = hi_oracle(component, hull, params);
    r.exact = std::max(r.hb, *r.hi_oracle);
  }
  return r;
}

// Flat hulls cannot enclose anything; such parts are final as they are.
Part make_part(SolidMesh component, const ConcavityParams& params, bool exact) {
  Part p;
  try {
    p.hull = convex_hull(component);
  } catch (const GeometryError& e) {
    if (e.code() != ErrorCode::DegenerateHull) throw;
    p.component = std::move(component);
    return p;
  }
  p.report = evaluate(component, p.hull, params, exact);
  p.component = std::move(component);
  return p;
}

bool touching(const SolidMesh& a, const TriangleIndex& b_index, double tol) {
  if (!a.bounds().overlaps(b_index.bounds(), tol)) return false;
  for (const Vec3& v : a.vertices())
    if (b_index.bounds().distance2(v) <= tol * tol && b_index.distance(v) <= tol) return true;
  return false;
}

double rv_from_gap(double gap) { return std::cbrt(3.0 * std::max(0.0, gap) / (4.0 * kPi)); }

}  // namespace

void DecomposeParams::validate() const {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (max_components < 1) throw std::invalid_argument("max_components must be at least 1");
  planner.validate();
}

Transform normalizing_transform(const SolidMesh& mesh, bool use_pca) {
  Transform t;
  if (use_pca) t.rotation = pca_axes(mesh).rotation;
  Box3 local;
  for (const Vec3& v : mesh.vertices()) local.extend(mul_transposed(t.rotation, v));
  const double extent = local.max_extent();
  t.scale = extent > 0 ? extent / 2 : 1.0;
  t.translation = mul(t.rotation, local.center());
  return t;
}

Decomposition decompose(const SolidMesh& mesh, const DecomposeParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  Decomposition out;
  out.transform = normalizing_transform(mesh, params.planner.use_pca);
  const SolidMesh normalized = mesh.transformed_inverse(out.transform);

  struct Item {
    SolidMesh mesh;
    std::uint64_t id;
  };
  std::deque<Item> queue;
  std::uint64_t next_id = 0;
  for (SolidMesh& shell : connected_components(normalized)) queue.push_back({std::move(shell), next_id++});

  std::vector<Part> parts;
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    ConcavityParams cp = params.concavity;
    cp.seed = derive_seed(params.concavity.seed, item.id);
    Part part = make_part(item.mesh, cp, false);
    if (part.hull.empty() || part.report.fast < params.epsilon) {
      parts.push_back(std::move(part));
      continue;
    }
    if (parts.size() + queue.size() + 2 > params.max_components) {
      out.stats.cap_exceeded = true;
      parts.push_back(std::move(part));
      continue;
    }

    PlannerParams pp = params.planner;
    pp.seed = derive_seed(params.planner.seed, item.id);
    CutResult cut;
    try {
      Plane plane;
      if (params.planner_kind == PlannerKind::Greedy) {
        plane = greedy_plan(item.mesh, pp);
      } else {
        const PlanResult plan = mcts_plan(item.mesh, pp, part.report.fast);
        plane = refine_plane(item.mesh, plan.path, pp);
      }
      cut = cut_with_retry(item.mesh, plane);
    } catch (const GeometryError&) {
      parts.push_back(std::move(part));  // nothing cuts it; keep as is
      continue;
    }

    std::vector<SolidMesh> pieces;
    for (SolidMesh* half : {&cut.negative_side, &cut.positive_side}) {
      if (params.planner.separate_shells) {
        for (SolidMesh& s : connected_components(*half)) pieces.push_back(std::move(s));
      } else {
        pieces.push_back(std::move(*half));
      }
    }
    if (parts.size() + queue.size() + pieces.size() > params.max_components) {
      out.stats.cap_exceeded = true;
      parts.push_back(std::move(part));
      continue;
    }
    ++out.stats.cuts;
    for (SolidMesh& s : pieces) queue.push_back({std::move(s), next_id++});
  }

  if (params.merge) {
    ConcavityParams cp = params.concavity;
    cp.seed = derive_seed(params.concavity.seed, kStreamMerge);
    out.stats.merges = merge_components(parts, params.epsilon, cp,
                                        2 * cut_epsilon(normalized));
  }
  if (params.exact_concavity) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].hull.empty()) continue;
      ConcavityParams cp = params.concavity;
      cp.seed = derive_seed(params.concavity.seed, i);
      parts[i].report.hi_oracle = hi_oracle(parts[i].component, parts[i].hull, cp);
      parts[i].report.exact = std::max(parts[i].report.hb, *parts[i].report.hi_oracle);
    }
  }

  for (Part& p : parts) {
    p.component = p.component.transformed(out.transform);
    if (!p.hull.empty()) p.hull = p.hull.transformed(out.transform);
  }
  out.parts = std::move(parts);
  out.stats.components = out.parts.size();
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::size_t merge_components(std::vector<Part>& parts, double epsilon,
                             const ConcavityParams& params, double contact_tol) {
  std::vector<std::uint64_t> uid(parts.size());
  std::vector<std::shared_ptr<TriangleIndex>> index(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    uid[i] = i;
    index[i] = std::make_shared<TriangleIndex>(parts[i].component);
  }
  std::uint64_t next_uid = parts.size();
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> cost;  // merged fast concavity

  std::size_t merges = 0;
  while (parts.size() >= 2) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    std::optional<Part> best_part;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (std::size_t j = i + 1; j < parts.size(); ++j) {
        const auto key = std::make_pair(uid[i], uid[j]);
        auto it = cost.find(key);
        if (it == cost.end()) {
          double c = std::numeric_limits<double>::infinity();
          if (touching(parts[i].component, *index[j], contact_tol) ||
              touching(parts[j].component, *index[i], contact_tol)) {
            const SolidMesh merged = SolidMesh::concatenate(parts[i].component, parts[j].component);
            try {
              const SolidMesh hull = convex_hull(merged);
              // R_v alone already rules most pairs out.
              c = params.k * rv(merged, hull);
              if (c <= epsilon) {
                ConcavityParams cp = params;
                cp.seed = derive_seed(params.seed, uid[i] * 0x100000001b3ull + uid[j]);
                c = concavity_fast(merged, hull, cp).fast;
              }
            } catch (const GeometryError& e) {
              if (e.code() != ErrorCode::DegenerateHull) throw;
            }
          }
          it = cost.emplace(key, c).first;
        }
        if (it->second < best) {
          best = it->second;
          bi = i;
          bj = j;
        }
      }
    }
    if (!(best <= epsilon)) break;

    ConcavityParams cp = params;
    cp.seed = derive_seed(params.seed, uid[bi] * 0x100000001b3ull + uid[bj]);
    Part merged;
    merged.component = SolidMesh::concatenate(parts[bi].component, parts[bj].component);
    merged.hull = convex_hull(merged.component);
    merged.report = concavity_fast(merged.component, merged.hull, cp);
    parts[bi] = std::move(merged);
    index[bi] = std::make_shared<TriangleIndex>(parts[bi].component);
    uid[bi] = next_uid++;
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(bj));
    index.erase(index.begin() + static_cast<std::ptrdiff_t>(bj));
    uid.erase(uid.begin() + static_cast<std::ptrdiff_t>(bj));
    ++merges;
  }
  return merges;
}

double score_decomposition(const SolidMesh& original, std::span<const SolidMesh> hulls,
                           const ConcavityParams& params) {
  const TriangleIndex solid(original);
  const double tol = kOnSurfaceRel * original.bounds().diagonal();
  const PointSet solid_samples = sample_surface(original, params.surface_density,
                                                derive_seed(params.seed, kStreamScoreSolid));
  double score = 0;
  for (std::size_t h = 0; h < hulls.size(); ++h) {
    const SolidMesh& hull = hulls[h];
    const TriangleIndex hull_index(hull);

    // Boundary of S ∩ CH: solid surface inside the hull plus hull surface
    // inside the solid. The hull of S ∩ CH is CH itself.
    double hb_value = 0;
    std::vector<std::array<Vec3, 3>> proxy;
    for (const Vec3& p : solid_samples.points) {
      const double d = hull_index.distance(p);
      if (d <= tol || hull_index.contains(p)) {
        proxy.push_back({p, p, p});
        hb_value = std::max(hb_value, d <= tol ? 0.0 : d);
      }
    }
    const PointSet hull_samples = sample_surface(
        hull, params.surface_density, derive_seed(params.seed, kStreamScoreHull + 7919 * h));
    std::vector<Vec3> outside;
    for (const Vec3& p : hull_samples.points) {
      if (solid.distance(p) <= tol || solid.contains(p))
        proxy.push_back({p, p, p});
      else
        outside.push_back(p);
    }
    if (!outside.empty() && !proxy.empty()) {
      const TriangleIndex cloud(std::move(proxy));
      for (const Vec3& p : outside) hb_value = std::max(hb_value, cloud.distance(p));
    }

    const PointSet inside = sample_interior(hull, hull_index, params.interior_count,
                                            derive_seed(params.seed, kStreamScoreInterior + 7919 * h));
    std::size_t in_solid = 0;
    for (const Vec3& p : inside.points) in_solid += solid.contains(p) || solid.distance(p) <= tol;
    const double vol = signed_volume(hull);
    const double gap = vol * (1.0 - static_cast<double>(in_solid) / inside.points.size());
    score = std::max(score, std::max(hb_value, params.k * rv_from_gap(gap)));
  }
  return score;
}

}  // namespace hullcut
