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

#include "hullcut/hull.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace hullcut {
namespace {

struct Face {
  std::array<std::uint32_t, 3> v{};
  std::array<int, 3> adj{-1, -1, -1};  // neighbour across edge (v[i], v[i+1])
  Vec3 normal{};
  double offset = 0;
  std::vector<std::uint32_t> outside;
  std::uint32_t furthest = 0;
  double furthest_dist = 0;
  bool alive = true;
  std::uint32_t mark = 0;
};

class QuickHull {
 public:
  QuickHull(std::span<const Vec3> pts, double eps) : pts_(pts), eps_(eps) {}

  // Empty optional: the visible region was not a disk (numerical trouble);
  // caller retries with a looser tolerance.
  std::optional<SolidMesh> run() {
    if (!initial_simplex()) throw GeometryError(ErrorCode::DegenerateHull, "input is flat or collinear");
    while (!queue_.empty()) {
      const int f = queue_.front();
      queue_.pop_front();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      if (!add_point(f)) return std::nullopt;
    }
    return extract();
  }

 private:
  double dist(const Face& f, std::uint32_t p) const { return dot(f.normal, pts_[p]) - f.offset; }

  void set_plane(Face& f) {
    const Vec3 a = pts_[f.v[0]], b = pts_[f.v[1]], c = pts_[f.v[2]];
    f.normal = normalized(cross(b - a, c - a));
    f.offset = dot(f.normal, (a + b + c) / 3.0);
  }

  bool initial_simplex() {
    const std::size_t n = pts_.size();
    if (n < 4) return false;
    std::array<std::uint32_t, 6> ext{};
    for (std::uint32_t i = 0; i < n; ++i) {
      for (int a = 0; a < 3; ++a) {
        if (pts_[i][a] < pts_[ext[2 * a]][a]) ext[2 * a] = i;
        if (pts_[i][a] > pts_[ext[2 * a + 1]][a]) ext[2 * a + 1] = i;
      }
    }
    std::uint32_t i0 = 0, i1 = 0;
    double best = -1;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) {
        const double d = norm2(pts_[ext[a]] - pts_[ext[b]]);
        if (d > best) {
          best = d;
          i0 = ext[a];
          i1 = ext[b];
        }
      }
    if (std::sqrt(best) <= eps_) return false;

    const Vec3 dir = normalized(pts_[i1] - pts_[i0]);
    std::uint32_t i2 = 0;
    best = -1;
    for (std::uint32_t i = 0; i < n; ++i) {
      const Vec3 r = pts_[i] - pts_[i0];
      const double d = norm2(r - dir * dot(r, dir));
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    if (std::sqrt(best) <= eps_) return false;

    const Vec3 pn = normalized(cross(pts_[i1] - pts_[i0], pts_[i2] - pts_[i0]));
    std::uint32_t i3 = 0;
    best = -1;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double d = std::abs(dot(pn, pts_[i] - pts_[i0]));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (best <= eps_) return false;

    const std::array<std::uint32_t, 4> s{i0, i1, i2, i3};
    const Vec3 centroid = (pts_[i0] + pts_[i1] + pts_[i2] + pts_[i3]) / 4.0;
    const int tri[4][3] = {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}};
    for (const auto& t : tri) {
      Face f;
      f.v = {s[t[0]], s[t[1]], s[t[2]]};
      set_plane(f);
      if (dot(f.normal, centroid) - f.offset > 0) {
        std::swap(f.v[1], f.v[2]);
        set_plane(f);
      }
      faces_.push_back(std::move(f));
    }
    for (int a = 0; a < 4; ++a)
      for (int e = 0; e < 3; ++e) {
        const auto u = faces_[a].v[e], w = faces_[a].v[(e + 1) % 3];
        for (int b = 0; b < 4; ++b)
          for (int k = 0; k < 3; ++k)
            if (faces_[b].v[k] == w && faces_[b].v[(k + 1) % 3] == u) faces_[a].adj[e] = b;
      }

    std::vector<std::uint32_t> rest;
    rest.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
      if (i != i0 && i != i1 && i != i2 && i != i3) rest.push_back(i);
    const int all[4] = {0, 1, 2, 3};
    assign(rest, all);
    for (int f = 0; f < 4; ++f)
      if (!faces_[f].outside.empty()) queue_.push_back(f);
    return true;
  }

  void assign(const std::vector<std::uint32_t>& points, std::span<const int> targets) {
    for (std::uint32_t p : points) {
      int best_face = -1;
      double best = eps_;
      for (int f : targets) {
        const double d = dist(faces_[f], p);
        if (d > best) {
          best = d;
          best_face = f;
        }
      }
      if (best_face < 0) continue;
      Face& face = faces_[best_face];
      if (face.outside.empty() || best > face.furthest_dist) {
        face.furthest = p;
        face.furthest_dist = best;
      }
      face.outside.push_back(p);
    }
  }

  bool add_point(int start) {
    const std::uint32_t p = faces_[start].furthest;
    const std::uint32_t mark = ++mark_;

    std::vector<int> visible{start};
    faces_[start].mark = mark;
    struct HorizonEdge {
      std::uint32_t a, b;
      int outer;
    };
    std::vector<HorizonEdge> horizon;
    for (std::size_t i = 0; i < visible.size(); ++i) {
      const Face& f = faces_[visible[i]];
      for (int e = 0; e < 3; ++e) {
        const int nb = f.adj[e];
        if (faces_[nb].mark == mark) continue;
        if (dist(faces_[nb], p) > eps_) {
          faces_[nb].mark = mark;
          visible.push_back(nb);
        }
      }
    }
    for (int vf : visible) {
      const Face& f = faces_[vf];
      for (int e = 0; e < 3; ++e)
        if (faces_[f.adj[e]].mark != mark) horizon.push_back({f.v[e], f.v[(e + 1) % 3], f.adj[e]});
    }

    // Chain the horizon into one loop; anything else means a non-disk region.
    std::vector<int> next_of(horizon.size(), -1);
    {
      std::vector<std::pair<std::uint32_t, int>> starts;
      starts.reserve(horizon.size());
      for (int i = 0; i < static_cast<int>(horizon.size()); ++i) starts.push_back({horizon[i].a, i});
      std::sort(starts.begin(), starts.end());
      for (std::size_t i = 1; i < starts.size(); ++i)
        if (starts[i].first == starts[i - 1].first) return false;
      for (int i = 0; i < static_cast<int>(horizon.size()); ++i) {
        auto it = std::lower_bound(starts.begin(), starts.end(), std::make_pair(horizon[i].b, -1));
        if (it == starts.end() || it->first != horizon[i].b) return false;
        next_of[i] = it->second;
      }
      int steps = 0;
      for (int i = 0;;) {
        i = next_of[i];
        ++steps;
        if (i == 0) break;
        if (steps > static_cast<int>(horizon.size())) return false;
      }
      if (steps != static_cast<int>(horizon.size())) return false;
    }

    std::vector<int> created(horizon.size());
    for (std::size_t i = 0; i < horizon.size(); ++i) {
      Face f;
      f.v = {horizon[i].a, horizon[i].b, p};
      set_plane(f);
      created[i] = static_cast<int>(faces_.size());
      faces_.push_back(std::move(f));
    }
    std::vector<int> prev_of(horizon.size());
    for (std::size_t i = 0; i < horizon.size(); ++i) prev_of[next_of[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < horizon.size(); ++i) {
      Face& f = faces_[created[i]];
      const int outer = horizon[i].outer;
      f.adj[0] = outer;
      f.adj[1] = created[next_of[i]];
      f.adj[2] = created[prev_of[i]];
      Face& o = faces_[outer];
      for (int k = 0; k < 3; ++k)
        if (o.v[k] == horizon[i].b && o.v[(k + 1) % 3] == horizon[i].a) o.adj[k] = created[i];
    }

    std::vector<std::uint32_t> orphans;
    for (int vf : visible) {
      Face& f = faces_[vf];
      f.alive = false;
      for (std::uint32_t q : f.outside)
        if (q != p) orphans.push_back(q);
      f.outside.clear();
      f.outside.shrink_to_fit();
    }
    assign(orphans, created);
    for (int f : created)
      if (!faces_[f].outside.empty()) queue_.push_back(f);
    return true;
  }

  SolidMesh extract() const {
    std::vector<std::uint32_t> remap(pts_.size(), UINT32_MAX);
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      Triangle t{};
      for (int k = 0; k < 3; ++k) {
        if (remap[f.v[k]] == UINT32_MAX) {
          remap[f.v[k]] = static_cast<std::uint32_t>(vertices.size());
          vertices.push_back(pts_[f.v[k]]);
        }
        t[k] = remap[f.v[k]];
      }
      triangles.push_back(t);
    }
    return SolidMesh::from_trusted(std::move(vertices), std::move(triangles));
  }

  std::span<const Vec3> pts_;
  double eps_;
  std::vector<Face> faces_;
  std::deque<int> queue_;
  std::uint32_t mark_ = 0;
};

}  // namespace

SolidMesh convex_hull(std::span<const Vec3> points) {
  double eps = hull_epsilon(points);
  for (int attempt = 0; attempt < 4; ++attempt, eps *= 10) {
    QuickHull qh(points, eps);
    if (auto mesh = qh.run()) return *std::move(mesh);
  }
  throw GeometryError(ErrorCode::DegenerateHull, "quickhull failed to converge");
}

}  // namespace hullcut
