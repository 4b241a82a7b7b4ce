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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace hullcut {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
constexpr double norm2(const Vec3& v) { return dot(v, v); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return n > 0 ? v / n : Vec3{};
}

inline Vec3 min(const Vec3& a, const Vec3& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 max(const Vec3& a, const Vec3& b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

struct Vec2 {
  double x = 0, y = 0;
  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

struct Box3 {
  Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity()};

  void extend(const Vec3& p) {
    lo = min(lo, p);
    hi = max(hi, p);
  }
  void extend(const Box3& b) {
    lo = min(lo, b.lo);
    hi = max(hi, b.hi);
  }
  bool empty() const { return lo.x > hi.x; }
  Vec3 extent() const { return hi - lo; }
  Vec3 center() const { return (lo + hi) * 0.5; }
  double diagonal() const { return empty() ? 0.0 : norm(hi - lo); }
  double max_extent() const {
    const Vec3 e = extent();
    return std::max({e.x, e.y, e.z});
  }
  /// Squared distance from p to the box (0 inside).
  double distance2(const Vec3& p) const {
    double d = 0;
    for (int i = 0; i < 3; ++i) {
      const double v = p[i] < lo[i] ? lo[i] - p[i] : (p[i] > hi[i] ? p[i] - hi[i] : 0.0);
      d += v * v;
    }
    return d;
  }
  bool overlaps(const Box3& o, double pad = 0) const {
    for (int i = 0; i < 3; ++i)
      if (lo[i] > o.hi[i] + pad || o.lo[i] > hi[i] + pad) return false;
    return true;
  }
};

inline Box3 bounding_box(std::span<const Vec3> pts) {
  Box3 b;
  for (const Vec3& p : pts) b.extend(p);
  return b;
}

/// Oriented plane {x : normal . x = offset}; normal is unit length.
struct Plane {
  Vec3 normal{0, 0, 1};
  double offset = 0;

  double signed_distance(const Vec3& p) const { return dot(normal, p) - offset; }
  bool operator==(const Plane&) const = default;
};

using Mat3 = std::array<Vec3, 3>;  // column vectors

inline Mat3 identity3() { return {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}; }

inline Vec3 mul(const Mat3& m, const Vec3& v) { return m[0] * v.x + m[1] * v.y + m[2] * v.z; }

inline Vec3 mul_transposed(const Mat3& m, const Vec3& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

inline Mat3 transposed(const Mat3& m) {
  return {Vec3{m[0].x, m[1].x, m[2].x}, Vec3{m[0].y, m[1].y, m[2].y},
          Vec3{m[0].z, m[1].z, m[2].z}};
}

/// Similarity transform: apply(p) = scale * rotation * p + translation.
struct Transform {
  double scale = 1.0;
  Mat3 rotation = identity3();
  Vec3 translation{};

  Vec3 apply(const Vec3& p) const { return mul(rotation, p) * scale + translation; }
  Vec3 apply_inverse(const Vec3& q) const {
    return mul_transposed(rotation, (q - translation) / scale);
  }
  /// Column i of the rotation, i.e. the world direction of local axis i.
  Vec3 axis(int i) const { return rotation[i]; }
};

/// Deterministic orthonormal in-plane basis (u, v) with u x v = n.
inline std::pair<Vec3, Vec3> plane_basis(const Vec3& n) {
  const Vec3 a = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 u = normalized(a - n * dot(a, n));
  return {u, cross(n, u)};
}

}  // namespace hullcut
