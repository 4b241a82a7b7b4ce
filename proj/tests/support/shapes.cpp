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

#include "shapes.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace hullcut::shapes {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint32_t index_of(std::size_t i) { return static_cast<std::uint32_t>(i); }

}  // namespace

SolidMesh box(const Vec3& lo, const Vec3& hi) {
  return grid_solid({lo.x, hi.x}, {lo.y, hi.y}, {lo.z, hi.z}, {true});
}

SolidMesh regular_tetrahedron() {
  TriangleSoup s;
  s.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  s.triangles = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return validate_manifold(s);
}

SolidMesh icosphere(double radius, int subdivisions) {
  const double t = (1 + std::sqrt(5.0)) / 2;
  TriangleSoup s;
  s.vertices = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  s.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (Vec3& v : s.vertices) v = normalized(v);
  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      s.vertices.push_back(normalized(s.vertices[a] + s.vertices[b]));
      const auto id = index_of(s.vertices.size() - 1);
      mid.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    for (const Triangle& f : s.triangles) {
      const auto a = midpoint(f[0], f[1]), b = midpoint(f[1], f[2]), c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    s.triangles = std::move(next);
  }
  for (Vec3& v : s.vertices) v = v * radius;
  return validate_manifold(s);
}

SolidMesh torus(double major, double minor, int nu, int nv) {
  TriangleSoup s;
  for (int i = 0; i < nu; ++i) {
    const double u = 2 * kPi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double v = 2 * kPi * j / nv;
      const double r = major + minor * std::cos(v);
      s.vertices.push_back({r * std::cos(u), r * std::sin(u), minor * std::sin(v)});
    }
  }
  auto id = [&](int i, int j) { return index_of(((i + nu) % nu) * nv + (j + nv) % nv); };
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      s.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      s.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return validate_manifold(s);
}

SolidMesh lathe(const std::vector<std::pair<double, double>>& profile, int segments, bool closed) {
  TriangleSoup s;
  // ring[i]: first vertex of profile point i; poles have a single vertex.
  std::vector<std::uint32_t> ring(profile.size());
  std::vector<bool> pole(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto [r, z] = profile[i];
    ring[i] = index_of(s.vertices.size());
    pole[i] = r <= 0;
    if (pole[i]) {
      s.vertices.push_back({0, 0, z});
      continue;
    }
    for (int k = 0; k < segments; ++k) {
      const double a = 2 * kPi * k / segments;
      s.vertices.push_back({r * std::cos(a), r * std::sin(a), z});
    }
  }
  auto at = [&](std::size_t i, int k) {
    return pole[i] ? ring[i] : ring[i] + index_of((k + segments) % segments);
  };
  const std::size_t n = profile.size();
  const std::size_t spans = closed ? n : n - 1;
  for (std::size_t i = 0; i < spans; ++i) {
    const std::size_t j = (i + 1) % n;
    for (int k = 0; k < segments; ++k) {
      if (!pole[i]) s.triangles.push_back({at(i, k), at(i, k + 1), at(j, k + 1)});
      if (!pole[j]) s.triangles.push_back({at(i, k), at(j, k + 1), at(j, k)});
    }
  }
  return validate_manifold(s);
}

SolidMesh grid_solid(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::vector<double>& zs, const std::vector<bool>& filled) {
  const int nx = static_cast<int>(xs.size()) - 1, ny = static_cast<int>(ys.size()) - 1,
            nz = static_cast<int>(zs.size()) - 1;
  auto cell = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return false;
    return static_cast<bool>(filled[(k * ny + j) * nx + i]);
  };
  TriangleSoup s;
  std::map<std::array<int, 3>, std::uint32_t> ids;
  auto vid = [&](int i, int j, int k) {
    auto [it, inserted] = ids.try_emplace({i, j, k}, index_of(s.vertices.size()));
    if (inserted) s.vertices.push_back({xs[i], ys[j], zs[k]});
    return it->second;
  };
  auto quad = [&](std::array<std::uint32_t, 4> q, bool flip) {
    if (flip) std::swap(q[1], q[3]);
    s.triangles.push_back({q[0], q[1], q[2]});
    s.triangles.push_back({q[0], q[2], q[3]});
  };
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!cell(i, j, k)) continue;
        for (int side = 0; side < 2; ++side) {
          const int di = side ? 1 : -1;
          const int x = i + side, y = j + side, z = k + side;
          // Corners ordered so the quad normal points along +axis; flip for -axis.
          if (!cell(i + di, j, k))
            quad({vid(x, j, k), vid(x, j + 1, k), vid(x, j + 1, k + 1), vid(x, j, k + 1)}, !side);
          if (!cell(i, j + di, k))
            quad({vid(i, y, k), vid(i, y, k + 1), vid(i + 1, y, k + 1), vid(i + 1, y, k)}, !side);
          if (!cell(i, j, k + di))
            quad({vid(i, j, z), vid(i + 1, j, z), vid(i + 1, j + 1, z), vid(i, j + 1, z)}, !side);
        }
      }
    }
  }
  return validate_manifold(s);
}

SolidMesh l_prism() {
  return grid_solid({0, 0.5, 1}, {0, 0.5, 1}, {0, 1}, {true, true, true, false});
}

SolidMesh notched_box() {
  return grid_solid({0, 0.8, 1.2, 2}, {0, 1}, {0, 0.5, 1},
                    {true, true, true, true, false, true});
}

SolidMesh square_frame() {
  return grid_solid({-1, -0.5, 0.5, 1}, {-1, -0.5, 0.5, 1}, {-0.25, 0.25},
                    {true, true, true, true, false, true, true, true, true});
}

namespace {

// Arc of a circle in the (r, z) half plane, from polar angle a0 to a1 measured
// from -z toward +r, inclusive of both ends.
void arc(std::vector<std::pair<double, double>>& out, double radius, double zc, double a0,
         double a1, int steps) {
  for (int i = 0; i <= steps; ++i) {
    const double a = a0 + (a1 - a0) * i / steps;
    const double r = radius * std::sin(a);
    out.push_back({r < 1e-12 * radius ? 0.0 : r, zc - radius * std::cos(a)});
  }
}

}  // namespace

SolidMesh dumbbell() {
  const double rb = 0.5, rn = 0.15, c = 1.0;
  const double cut = kPi - std::asin(rn / rb);  // where the bottom ball meets the neck
  std::vector<std::pair<double, double>> p;
  arc(p, rb, -c, 0, cut, 16);
  std::vector<std::pair<double, double>> top;
  arc(top, rb, c, kPi - cut, kPi, 16);
  p.insert(p.end(), top.begin(), top.end());
  return lathe(p, 32);
}

SolidMesh bottle_cap() {
  return lathe({{0, 0}, {1, 0}, {1, 0.6}, {0.9, 0.6}, {0.9, 0.1}, {0, 0.1}}, 48);
}

SolidMesh open_shell(double outer, double inner, double opening, int segments) {
  std::vector<std::pair<double, double>> p;
  const double ao = kPi - std::asin(opening / outer);
  const double ai = kPi - std::asin(opening / inner);
  arc(p, outer, 0, 0, ao, 24);
  std::vector<std::pair<double, double>> in;
  arc(in, inner, 0, 0, ai, 24);
  p.insert(p.end(), in.rbegin(), in.rend());
  return lathe(p, segments);
}

SolidMesh drilled_sphere(double hole, double depth, int segments) {
  std::vector<std::pair<double, double>> p;
  const double a = kPi - std::asin(hole);
  arc(p, 1.0, 0, 0, a, 32);
  const double bottom = 1.0 - depth;
  p.push_back({hole, bottom});
  p.push_back({0, bottom});
  return lathe(p, segments);
}

SolidMesh hollow_hemisphere(double outer, double inner, int segments) {
  std::vector<std::pair<double, double>> p;
  arc(p, outer, 0, 0, kPi / 2, 16);
  std::vector<std::pair<double, double>> in;
  arc(in, inner, 0, 0, kPi / 2, 16);
  p.insert(p.end(), in.rbegin(), in.rend());
  return lathe(p, segments);
}

SolidMesh cube_with_void() {
  const SolidMesh outer = box({0, 0, 0}, {3, 3, 3});
  const SolidMesh inner = box({1, 1, 1}, {2, 2, 2});
  TriangleSoup s = outer.soup();
  const auto base = index_of(s.vertices.size());
  s.vertices.insert(s.vertices.end(), inner.vertices().begin(), inner.vertices().end());
  for (const Triangle& t : inner.triangles()) s.triangles.push_back({t[0] + base, t[2] + base, t[1] + base});
  return validate_manifold(s);
}

SolidMesh random_csg(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> axes[3];
    for (auto& a : axes) {
      a = {0};
      for (int i = 0; i < 3; ++i) a.push_back(a.back() + 0.3 + u(rng));
    }
    std::vector<bool> filled(27);
    int count = 0;
    for (std::size_t i = 0; i < filled.size(); ++i) count += (filled[i] = u(rng) < 0.6);
    if (count < 5) continue;
    try {
      SolidMesh m = grid_solid(axes[0], axes[1], axes[2], filled);
      if (connected_components(m).size() == 1) {
        std::size_t shells = 0;
        shell_labels(m, &shells);
        if (shells == 1) return m;
      }
    } catch (const GeometryError&) {
      // diagonal-only contacts are non-manifold; draw again
    }
  }
  throw std::runtime_error("random_csg: no manifold sample");
}

std::vector<NamedShape> metric_suite() {
  std::vector<NamedShape> out;
  out.push_back({"open_shell", open_shell()});
  out.push_back({"drilled_sphere", drilled_sphere()});
  out.push_back({"hollow_hemisphere", hollow_hemisphere()});
  out.push_back({"l_prism", l_prism()});
  out.push_back({"notched_box", notched_box()});
  out.push_back({"square_frame", square_frame()});
  out.push_back({"torus", torus(1.0, 0.3)});
  out.push_back({"bottle_cap", bottle_cap()});
  for (std::uint64_t s = 1; out.size() < 20; ++s) out.push_back({"csg_" + std::to_string(s), random_csg(s)});
  return out;
}

std::vector<NamedShape> planner_suite() {
  std::vector<NamedShape> out;
  out.push_back({"torus", torus(1.0, 0.3, 24, 12)});
  out.push_back({"l_prism", l_prism()});
  out.push_back({"notched_box", notched_box()});
  out.push_back({"square_frame", square_frame()});
  out.push_back({"dumbbell", dumbbell()});
  out.push_back({"bottle_cap", bottle_cap()});
  return out;
}

}  // namespace hullcut::shapes
