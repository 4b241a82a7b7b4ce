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

#include "hullcut/spatial.hpp"

#include <algorithm>
#include <numeric>

namespace hullcut {

// Ericson, Real-Time Collision Detection, 5.1.5: Voronoi region walk.
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return a;

  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));

  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0)
    return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));

  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

double point_triangle_distance2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  return norm2(p - closest_point_on_triangle(p, a, b, c));
}

namespace {

std::vector<std::array<Vec3, 3>> corners_of(const SolidMesh& mesh) {
  std::vector<std::array<Vec3, 3>> tris(mesh.triangle_count());
  for (std::size_t t = 0; t < tris.size(); ++t) tris[t] = mesh.corners(t);
  return tris;
}

const std::array<Vec3, 16>& ray_directions() {
  static const std::array<Vec3, 16> dirs = [] {
    std::array<Vec3, 16> d{};
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    auto next = [&state] {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (auto& v : d) {
      const double z = 2 * next() - 1, phi = 2 * M_PI * next();
      const double r = std::sqrt(std::max(0.0, 1 - z * z));
      v = {r * std::cos(phi), r * std::sin(phi), z};
    }
    return d;
  }();
  return dirs;
}

bool ray_hits_box(const Vec3& o, const Vec3& inv, const Box3& b) {
  double t0 = 0, t1 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    double a = (b.lo[i] - o[i]) * inv[i], c = (b.hi[i] - o[i]) * inv[i];
    if (a > c) std::swap(a, c);
    // NaN from 0 * inf means the ray lies on a slab plane; keep it.
    if (!(a <= t1 && c >= t0)) {
      if (std::isnan(a) || std::isnan(c)) continue;
      return false;
    }
    t0 = std::max(t0, a);
    t1 = std::min(t1, c);
  }
  return t0 <= t1;
}

}  // namespace

TriangleIndex::TriangleIndex(const SolidMesh& mesh) : TriangleIndex(corners_of(mesh)) {}

TriangleIndex::TriangleIndex(std::vector<std::array<Vec3, 3>> triangles,
                             std::vector<std::uint32_t> labels)
    : tris_(std::move(triangles)), labels_(std::move(labels)) {
  build();
}

void TriangleIndex::build() {
  const std::size_t n = tris_.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  std::vector<Vec3> centroids(n);
  for (std::size_t i = 0; i < n; ++i)
    centroids[i] = (tris_[i][0] + tris_[i][1] + tris_[i][2]) / 3.0;

  nodes_.clear();
  nodes_.reserve(2 * n / 2 + 1);
  nodes_.push_back({});
  struct Task {
    std::uint32_t node, begin, end;
  };
  std::vector<Task> stack{{0, 0, static_cast<std::uint32_t>(n)}};
  while (!stack.empty()) {
    const Task task = stack.back();
    stack.pop_back();
    Box3 box, cbox;
    for (std::uint32_t i = task.begin; i < task.end; ++i) {
      for (const Vec3& v : tris_[order_[i]]) box.extend(v);
      cbox.extend(centroids[order_[i]]);
    }
    nodes_[task.node].box = box;
    if (task.end - task.begin <= 4) {
      nodes_[task.node].first = task.begin;
      nodes_[task.node].count = task.end - task.begin;
      continue;
    }
    const Vec3 e = cbox.extent();
    const int axis = e.x >= e.y && e.x >= e.z ? 0 : (e.y >= e.z ? 1 : 2);
    const std::uint32_t mid = task.begin + (task.end - task.begin) / 2;
    std::nth_element(order_.begin() + task.begin, order_.begin() + mid, order_.begin() + task.end,
                     [&](std::uint32_t l, std::uint32_t r) {
                       return centroids[l][axis] != centroids[r][axis]
                                  ? centroids[l][axis] < centroids[r][axis]
                                  : l < r;
                     });
    const auto left = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({});
    nodes_.push_back({});
    nodes_[task.node].first = left;
    nodes_[task.node].right = left + 1;
    stack.push_back({left + 1, mid, task.end});
    stack.push_back({left, task.begin, mid});
  }
  // Reorder triangle storage to leaf order for locality.
  std::vector<std::array<Vec3, 3>> sorted(n);
  std::vector<std::uint32_t> sorted_labels(labels_.empty() ? 0 : n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = tris_[order_[i]];
    if (!labels_.empty()) sorted_labels[i] = labels_[order_[i]];
  }
  tris_ = std::move(sorted);
  labels_ = std::move(sorted_labels);
  scale_ = std::max(nodes_.front().box.diagonal(), std::numeric_limits<double>::min());
}

template <typename Accept>
TriangleIndex::Nearest TriangleIndex::nearest_impl(const Vec3& p, Accept&& accept) const {
  double best2 = std::numeric_limits<double>::infinity();
  std::size_t best_tri = 0;
  Vec3 best_point{};
  if (tris_.empty()) return {};
  std::uint32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (node.box.distance2(p) >= best2) continue;
    if (node.count > 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        if (!accept(i)) continue;
        const auto& t = tris_[i];
        const Vec3 q = closest_point_on_triangle(p, t[0], t[1], t[2]);
        const double d2 = norm2(p - q);
        if (d2 < best2 || (d2 == best2 && order_[i] < best_tri)) {
          best2 = d2;
          best_tri = order_[i];
          best_point = q;
        }
      }
      continue;
    }
    const double dl = nodes_[node.first].box.distance2(p);
    const double dr = nodes_[node.right].box.distance2(p);
    if (dl <= dr) {
      stack[top++] = node.right;
      stack[top++] = node.first;
    } else {
      stack[top++] = node.first;
      stack[top++] = node.right;
    }
  }
  return {std::sqrt(best2), best_tri, best_point};
}

TriangleIndex::Nearest TriangleIndex::nearest(const Vec3& p) const {
  return nearest_impl(p, [](std::uint32_t) { return true; });
}

TriangleIndex::Nearest TriangleIndex::nearest_with_other_label(const Vec3& p,
                                                               std::uint32_t label) const {
  return nearest_impl(p, [&](std::uint32_t i) { return labels_[i] != label; });
}

int TriangleIndex::parity(const Vec3& o, const Vec3& dir) const {
  const Vec3 inv{1.0 / dir.x, 1.0 / dir.y, 1.0 / dir.z};
  const double eps = Tolerances::kRayEps;
  int crossings = 0;
  std::uint32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!ray_hits_box(o, inv, node.box)) continue;
    if (node.count == 0) {
      stack[top++] = node.first;
      stack[top++] = node.right;
      continue;
    }
    for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
      // Moller-Trumbore with explicit grazing detection.
      const auto& t = tris_[i];
      const Vec3 e1 = t[1] - t[0], e2 = t[2] - t[0];
      const Vec3 pv = cross(dir, e2);
      const double det = dot(e1, pv);
      const double scale = norm(e1) * norm(e2);
      if (std::abs(det) <= eps * scale) {
        // Ray parallel to the triangle plane: ambiguous only if it lies in it.
        const Vec3 n = cross(e1, e2);
        if (std::abs(dot(n, o - t[0])) <= eps * scale * scale_) return -1;
        continue;
      }
      const double inv_det = 1.0 / det;
      const Vec3 s = o - t[0];
      const double u = dot(s, pv) * inv_det;
      if (u < -eps || u > 1 + eps) continue;
      const Vec3 q = cross(s, e1);
      const double v = dot(dir, q) * inv_det;
      if (v < -eps || u + v > 1 + eps) continue;
      const double dist = dot(e2, q) * inv_det;
      if (dist < -eps * scale_) continue;
      if (std::abs(dist) <= eps * scale_) return -2;  // origin on the surface
      if (u <= eps || v <= eps || u + v >= 1 - eps) return -1;
      ++crossings;
    }
  }
  return crossings & 1;
}

bool TriangleIndex::contains(const Vec3& p) const {
  if (tris_.empty() || nodes_.front().box.distance2(p) > 0) return false;
  for (const Vec3& dir : ray_directions()) {
    const int r = parity(p, dir);
    if (r == -2) return false;
    if (r >= 0) return r == 1;
  }
  return false;
}

bool point_in_mesh(const SolidMesh& mesh, const Vec3& p) { return TriangleIndex(mesh).contains(p); }

}  // namespace hullcut
