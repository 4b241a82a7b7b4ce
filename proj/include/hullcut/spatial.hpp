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

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"

namespace hullcut {

/// Closest point to p on the closed triangle (a, b, c).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double point_triangle_distance2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

inline double point_triangle_distance(const Vec3& p, const std::array<Vec3, 3>& tri) {
  return std::sqrt(point_triangle_distance2(p, tri[0], tri[1], tri[2]));
}

/// Bounding volume hierarchy over a fixed triangle set. Answers nearest
/// triangle and ray-parity queries; read-only after construction, so one
/// index may be shared across threads.
class TriangleIndex {
 public:
  explicit TriangleIndex(const SolidMesh& mesh);
  explicit TriangleIndex(std::vector<std::array<Vec3, 3>> triangles,
                         std::vector<std::uint32_t> labels = {});

  struct Nearest {
    double distance = std::numeric_limits<double>::infinity();
    std::size_t triangle = 0;
    Vec3 point{};
  };

  /// Nearest triangle overall, bit-equal to the brute-force minimum.
  Nearest nearest(const Vec3& p) const;

  /// Nearest triangle whose label differs from `label`. Requires labels.
  Nearest nearest_with_other_label(const Vec3& p, std::uint32_t label) const;

  double distance(const Vec3& p) const { return nearest(p).distance; }

  /// Even-odd ray parity; retries along other directions when the ray grazes
  /// an edge or vertex. Points on the surface report false.
  bool contains(const Vec3& p) const;

  std::size_t size() const { return tris_.size(); }
  const Box3& bounds() const { return nodes_.front().box; }

 private:
  struct Node {
    Box3 box;
    std::uint32_t first = 0;  // leaf: first triangle; inner: left child
    std::uint32_t count = 0;  // 0 for inner nodes
    std::uint32_t right = 0;
  };

  void build();
  template <typename Accept>
  Nearest nearest_impl(const Vec3& p, Accept&& accept) const;
  // 1 = odd, 0 = even, -1 = ambiguous (grazing).
  int parity(const Vec3& origin, const Vec3& dir) const;

  std::vector<std::array<Vec3, 3>> tris_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::uint32_t> order_;  // original index of each stored triangle
  std::vector<Node> nodes_;
  double scale_ = 1;
};

/// Ray-crossing parity test. Builds a throwaway index; reuse TriangleIndex
/// for batches.
bool point_in_mesh(const SolidMesh& mesh, const Vec3& p);

}  // namespace hullcut
