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

#include "hullcut/cutter.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "cdt.hpp"

namespace hullcut {
namespace {

int side_of(double s, double eps) { return s > eps ? 1 : (s < -eps ? -1 : 0); }

// Splits triangle (ids, sides) that has vertices strictly on both sides.
// `cross(a, b)` returns the id of the plane point on edge (a, b); `emit(side,
// tri)` receives each sub-triangle with the input winding.
template <typename Pos, typename Cross, typename Emit>
void split_ids(std::array<std::uint32_t, 3> v, std::array<int, 3> s, Pos&& pos, Cross&& cross,
               Emit&& emit) {
  auto rotate_to = [&](int k) {
    std::rotate(v.begin(), v.begin() + k, v.end());
    std::rotate(s.begin(), s.begin() + k, s.end());
  };
  for (int k = 0; k < 3; ++k) {
    if (s[k] == 0) {
      rotate_to(k);
      const std::uint32_t m = cross(v[1], v[2]);
      emit(s[1], std::array{v[0], v[1], m});
      emit(s[2], std::array{v[0], m, v[2]});
      return;
    }
  }
  int lone = 0;
  if (s[1] != s[0] && s[1] != s[2]) lone = 1;
  if (s[2] != s[0] && s[2] != s[1]) lone = 2;
  rotate_to(lone);
  const std::uint32_t m1 = cross(v[0], v[1]), m2 = cross(v[0], v[2]);
  emit(s[0], std::array{v[0], m1, m2});
  // Split the quad (m1, v1, v2, m2) along its shorter diagonal.
  if (norm2(pos(m1) - pos(v[2])) <= norm2(pos(v[1]) - pos(m2))) {
    emit(s[1], std::array{m1, v[1], v[2]});
    emit(s[1], std::array{m1, v[2], m2});
  } else {
    emit(s[1], std::array{m1, v[1], m2});
    emit(s[1], std::array{v[1], v[2], m2});
  }
}

double loop_area(std::span<const Vec2> pts, std::span<const detail::Edge2> edges) {
  double a = 0;
  for (const auto& e : edges) a += cross(pts[e[0]], pts[e[1]]);
  return a / 2;
}

[[noreturn]] void empty_side(const std::string& why) { throw GeometryError(ErrorCode::EmptySide, why); }

}  // namespace

TriangleSides classify_triangles(const SolidMesh& mesh, const Plane& plane, double eps) {
  std::vector<int> side(mesh.vertex_count());
  for (std::size_t i = 0; i < side.size(); ++i)
    side[i] = side_of(plane.signed_distance(mesh.vertices()[i]), eps);
  TriangleSides out;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    bool neg = false, pos = false;
    for (auto v : tri) {
      neg |= side[v] < 0;
      pos |= side[v] > 0;
    }
    if (neg && pos) {
      out.crossing.push_back(t);
    } else if (neg) {
      out.negative.push_back(t);
    } else if (pos) {
      out.positive.push_back(t);
    } else {
      const auto c = mesh.corners(t);
      const bool faces_up = dot(cross(c[1] - c[0], c[2] - c[0]), plane.normal) > 0;
      (faces_up ? out.negative : out.positive).push_back(t);
    }
  }
  return out;
}

SplitTriangle split_crossing(const std::array<Vec3, 3>& tri, const Plane& plane, double eps) {
  std::vector<Vec3> pos(tri.begin(), tri.end());
  std::array<int, 3> s{};
  for (int k = 0; k < 3; ++k) s[k] = side_of(plane.signed_distance(tri[k]), eps);
  SplitTriangle out;
  auto cross_at = [&](std::uint32_t a, std::uint32_t b) {
    const double sa = plane.signed_distance(pos[a]), sb = plane.signed_distance(pos[b]);
    pos.push_back(pos[a] + (pos[b] - pos[a]) * (sa / (sa - sb)));
    return static_cast<std::uint32_t>(pos.size() - 1);
  };
  auto on_plane = [&](std::uint32_t i) { return i >= 3 || s[i] == 0; };
  split_ids({0, 1, 2}, s, [&](std::uint32_t i) { return pos[i]; }, cross_at,
            [&](int side, std::array<std::uint32_t, 3> t) {
              (side < 0 ? out.negative : out.positive).push_back({pos[t[0]], pos[t[1]], pos[t[2]]});
              if (side > 0) return;
              for (int k = 0; k < 3; ++k) {
                const std::uint32_t a = t[k], b = t[(k + 1) % 3];
                if (on_plane(a) && on_plane(b)) out.segment = {pos[b], pos[a]};
              }
            });
  return out;
}

CrossSection build_cross_section(std::span<const std::array<Vec2, 2>> segments, double eps) {
  std::vector<Vec2> pts;
  auto id_of = [&](const Vec2& p) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (std::abs(pts[i].x - p.x) <= eps && std::abs(pts[i].y - p.y) <= eps)
        return static_cast<std::uint32_t>(i);
    pts.push_back(p);
    return static_cast<std::uint32_t>(pts.size() - 1);
  };
  std::vector<detail::Edge2> edges;
  for (const auto& s : segments) edges.push_back({id_of(s[0]), id_of(s[1])});

  std::unordered_multimap<std::uint32_t, std::size_t> outgoing;
  for (std::size_t i = 0; i < edges.size(); ++i) outgoing.emplace(edges[i][0], i);
  std::vector<bool> used(edges.size(), false);
  CrossSection out;
  for (std::size_t first = 0; first < edges.size(); ++first) {
    if (used[first]) continue;
    std::vector<Vec2> loop;
    std::size_t e = first;
    while (true) {
      used[e] = true;
      loop.push_back(pts[edges[e][0]]);
      const std::uint32_t end = edges[e][1];
      if (end == edges[first][0]) break;
      auto [lo, hi] = outgoing.equal_range(end);
      auto it = std::find_if(lo, hi, [&](const auto& kv) { return !used[kv.second]; });
      if (it == hi) {
        throw GeometryError(ErrorCode::OpenChain, "cross-section segment end has no continuation",
                            {e});
      }
      e = it->second;
    }
    out.loops.push_back(std::move(loop));
  }
  return out;
}

std::vector<std::array<Vec2, 3>> triangulate_cap(const CrossSection& section, double area_eps) {
  std::vector<Vec2> pts;
  std::vector<detail::Edge2> edges;
  std::map<std::pair<double, double>, std::uint32_t> ids;
  auto id_of = [&](const Vec2& p) {
    auto [it, fresh] = ids.try_emplace({p.x, p.y}, static_cast<std::uint32_t>(pts.size()));
    if (fresh) pts.push_back(p);
    return it->second;
  };
  for (const auto& loop : section.loops)
    for (std::size_t i = 0; i < loop.size(); ++i)
      edges.push_back({id_of(loop[i]), id_of(loop[(i + 1) % loop.size()])});
  if (std::abs(loop_area(pts, edges)) <= area_eps) return {};
  std::vector<std::array<Vec2, 3>> out;
  for (const auto& t : detail::triangulate_region(pts, edges)) out.push_back({pts[t[0]], pts[t[1]], pts[t[2]]});
  return out;
}

namespace {

struct Halves {
  std::vector<Vec3> pos;  // input vertices (snapped) followed by edge crossings
  std::vector<Triangle> neg, posi;
  std::vector<std::array<std::uint32_t, 2>> rim;  // cap boundary, negative-cap winding
};

Halves halve(const SolidMesh& mesh, const Plane& plane) {
  const double eps = cut_epsilon(mesh);
  const Vec3 n = plane.normal;
  Halves h;
  std::vector<Vec3>& pos = h.pos;
  pos = mesh.vertices();
  std::vector<int> side(pos.size());
  std::vector<double> dist(pos.size());
  bool any_neg = false, any_pos = false;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    dist[i] = plane.signed_distance(pos[i]);
    side[i] = side_of(dist[i], eps);
    if (side[i] == 0) {
      pos[i] -= n * dist[i];
      dist[i] = 0;
    }
    any_neg |= side[i] < 0;
    any_pos |= side[i] > 0;
  }
  if (!any_neg || !any_pos) empty_side("plane does not separate the solid");

  std::unordered_map<std::uint64_t, std::uint32_t> cache;
  auto cross_at = [&](std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (std::uint64_t{a} << 32) | b;
    auto [it, inserted] = cache.try_emplace(key, static_cast<std::uint32_t>(pos.size()));
    if (inserted) {
      Vec3 p = pos[a] + (pos[b] - pos[a]) * (dist[a] / (dist[a] - dist[b]));
      p -= n * plane.signed_distance(p);
      pos.push_back(p);
      side.push_back(0);
      dist.push_back(0);
    }
    return it->second;
  };

  std::vector<Triangle>& neg = h.neg;
  std::vector<Triangle>& posi = h.posi;
  auto at = [&](std::uint32_t i) { return pos[i]; };
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const Triangle& tri = mesh.triangles()[t];
    const std::array<int, 3> s{side[tri[0]], side[tri[1]], side[tri[2]]};
    const bool has_neg = s[0] < 0 || s[1] < 0 || s[2] < 0;
    const bool has_pos = s[0] > 0 || s[1] > 0 || s[2] > 0;
    if (has_neg && has_pos) {
      split_ids(tri, s, at, cross_at, [&](int sd, Triangle sub) { (sd < 0 ? neg : posi).push_back(sub); });
    } else if (has_neg) {
      neg.push_back(tri);
    } else if (has_pos) {
      posi.push_back(tri);
    } else {
      const bool faces_up = dot(cross(pos[tri[1]] - pos[tri[0]], pos[tri[2]] - pos[tri[0]]), n) > 0;
      (faces_up ? neg : posi).push_back(tri);
    }
  }

  // Open edges of the negative half, reversed, bound its cap.
  std::unordered_set<std::uint64_t> directed;
  directed.reserve(neg.size() * 3);
  for (const Triangle& t : neg)
    for (int k = 0; k < 3; ++k) directed.insert((std::uint64_t{t[k]} << 32) | t[(k + 1) % 3]);
  std::vector<std::array<std::uint32_t, 2>>& rim = h.rim;
  for (const Triangle& t : neg) {
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = t[k], b = t[(k + 1) % 3];
      if (directed.count((std::uint64_t{b} << 32) | a)) continue;
      if (side[a] != 0 || side[b] != 0) {
        throw GeometryError(ErrorCode::OpenChain, "open edge off the cutting plane", {a, b});
      }
      rim.push_back({b, a});
    }
  }
  std::sort(rim.begin(), rim.end());
  if (rim.empty()) empty_side("plane only touches the surface");

  return h;
}

}  // namespace

CrossSection cross_section(const SolidMesh& mesh, const Plane& plane) {
  const Halves h = halve(mesh, plane);
  const auto [u, v] = plane_basis(plane.normal);
  std::vector<std::array<Vec2, 2>> segments;
  for (const auto& e : h.rim) {
    segments.push_back({Vec2{dot(h.pos[e[0]], u), dot(h.pos[e[0]], v)},
                        Vec2{dot(h.pos[e[1]], u), dot(h.pos[e[1]], v)}});
  }
  return build_cross_section(segments, cut_epsilon(mesh));
}

CutResult cut(const SolidMesh& mesh, const Plane& plane) {
  Halves h = halve(mesh, plane);
  const std::vector<Vec3>& pos = h.pos;
  const Vec3 n = plane.normal;
  std::vector<Triangle>& neg = h.neg;
  std::vector<Triangle>& posi = h.posi;
  const auto& rim = h.rim;

  std::unordered_map<std::uint32_t, std::uint32_t> local;
  std::vector<std::uint32_t> global;
  std::vector<Vec2> pts;
  const auto [u, v] = plane_basis(n);
  auto local_id = [&](std::uint32_t g) {
    auto [it, inserted] = local.try_emplace(g, static_cast<std::uint32_t>(global.size()));
    if (inserted) {
      global.push_back(g);
      pts.push_back({dot(pos[g], u), dot(pos[g], v)});
    }
    return it->second;
  };
  std::vector<detail::Edge2> edges;
  std::vector<int> degree;
  for (const auto& e : rim) edges.push_back({local_id(e[0]), local_id(e[1])});
  degree.assign(global.size(), 0);
  for (const auto& e : edges) {
    ++degree[e[0]];
    --degree[e[1]];
  }
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] != 0) throw GeometryError(ErrorCode::OpenChain, "cross-section does not close", {global[i]});

  const double half = 0.5 * mesh.bounds().max_extent();
  const double area = loop_area(pts, edges);
  if (area <= Tolerances::kAreaEps * half * half) empty_side("cross-section has no area");
  const auto cap = detail::triangulate_region(pts, edges);
  double tiled = 0;
  for (const auto& t : cap) tiled += 0.5 * cross(pts[t[1]] - pts[t[0]], pts[t[2]] - pts[t[0]]);
  if (std::abs(tiled - area) > 1e-8 * area) {
    throw GeometryError(ErrorCode::TriangulationFailure, "cap does not tile the cross-section");
  }
  for (const auto& t : cap) {
    neg.push_back({global[t[0]], global[t[1]], global[t[2]]});
    posi.push_back({global[t[0]], global[t[2]], global[t[1]]});
  }

  auto finish = [&](std::vector<Triangle> tris, const char* name) {
    SolidMesh m;
    try {
      m = validate_manifold({pos, std::move(tris)});
    } catch (const GeometryError& e) {
      if (e.code() == ErrorCode::ZeroVolume) empty_side(std::string(name) + " side has no volume");
      throw GeometryError(ErrorCode::TriangulationFailure,
                          std::string(name) + " side is not a valid solid (" + e.what() + ")");
    }
    if (signed_volume(m) < Tolerances::kVolumeEps) empty_side(std::string(name) + " side is too thin");
    return m;
  };
  CutResult out;
  out.negative_side = finish(std::move(neg), "negative");
  out.positive_side = finish(std::move(posi), "positive");
  out.cap_triangle_count = cap.size();
  out.plane = plane;
  return out;
}

CutResult cut_with_retry(const SolidMesh& mesh, const Plane& plane) {
  const double step = 3 * cut_epsilon(mesh);
  const double shifts[] = {0, step, -step, 2 * step};
  for (int attempt = 0;; ++attempt) {
    try {
      return cut(mesh, {plane.normal, plane.offset + shifts[attempt]});
    } catch (const GeometryError& e) {
      const bool numeric = e.code() == ErrorCode::OpenChain || e.code() == ErrorCode::TriangulationFailure;
      if (!numeric || attempt == 3) throw;
    }
  }
}

}  // namespace hullcut
