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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "hullcut/hull.hpp"
#include "hullcut/mesh.hpp"
#include "hullcut/pca.hpp"
#include "hullcut/sampling.hpp"
#include "hullcut/spatial.hpp"
#include "shapes.hpp"

namespace hullcut {
namespace {

constexpr double kPi = 3.14159265358979323846;

ErrorCode code_of(const TriangleSoup& soup) {
  try {
    validate_manifold(soup);
  } catch (const GeometryError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a validation error";
  return ErrorCode::IoError;
}

TEST(Validate, AcceptsUnitCube) {
  const SolidMesh cube = shapes::unit_cube();
  EXPECT_EQ(cube.triangle_count(), 12u);
  EXPECT_DOUBLE_EQ(signed_volume(cube), 1.0);
}

TEST(Validate, FlipsInvertedWinding) {
  TriangleSoup s = shapes::unit_cube().soup();
  for (auto& t : s.triangles) std::swap(t[0], t[1]);
  EXPECT_NEAR(signed_volume(validate_manifold(s)), 1.0, 1e-15);
}

TEST(Validate, RejectsOpenBoundary) {
  TriangleSoup s = shapes::unit_cube().soup();
  s.triangles.pop_back();
  EXPECT_EQ(code_of(s), ErrorCode::OpenBoundary);
}

TEST(Validate, RejectsEdgeOfValenceFour) {
  // Two tetrahedra glued along edge (0,1) only.
  TriangleSoup s;
  s.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}};
  s.triangles = {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3},
                 {0, 1, 4}, {0, 5, 1}, {0, 4, 5}, {1, 5, 4}};
  try {
    validate_manifold(s);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonManifoldEdge);
    EXPECT_EQ(e.elements(), (std::vector<std::size_t>{0, 1}));
  }
}

TEST(Validate, RejectsFlippedTriangle) {
  TriangleSoup s = shapes::unit_cube().soup();
  std::swap(s.triangles[3][0], s.triangles[3][1]);
  EXPECT_EQ(code_of(s), ErrorCode::InconsistentOrientation);
}

TEST(Validate, RejectsDegenerateAndOutOfRange) {
  TriangleSoup s = shapes::unit_cube().soup();
  s.triangles[0][1] = s.triangles[0][0];
  EXPECT_EQ(code_of(s), ErrorCode::DegenerateTriangle);
  s = shapes::unit_cube().soup();
  s.triangles[0][1] = 99;
  EXPECT_EQ(code_of(s), ErrorCode::IndexOutOfRange);
}

TEST(Validate, DropsUnreferencedVertices) {
  TriangleSoup s = shapes::unit_cube().soup();
  s.vertices.push_back({5, 5, 5});
  EXPECT_EQ(validate_manifold(s).vertex_count(), 8u);
}

TEST(Validate, EveryEdgeHasValenceTwo) {
  for (const auto& [name, mesh] : shapes::metric_suite()) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
    for (const auto& t : mesh.triangles())
      for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
    for (const auto& [e, n] : directed) {
      EXPECT_EQ(n, 1) << name;
      EXPECT_EQ(directed.count({e.second, e.first}), 1u) << name;
    }
    EXPECT_GT(signed_volume(mesh), 0) << name;
  }
}

// Independent volume: tetra fan from a point far from the origin.
double fan_volume(const SolidMesh& m, const Vec3& apex) {
  double v = 0;
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    const auto c = m.corners(t);
    v += dot(c[0] - apex, cross(c[1] - apex, c[2] - apex));
  }
  return v / 6;
}

TEST(Measures, VolumeAndArea) {
  const SolidMesh cube = shapes::unit_cube();
  EXPECT_NEAR(signed_volume(cube.transformed({2.0, identity3(), {}})), 8.0, 1e-12);
  EXPECT_NEAR(surface_area(cube), 6.0, 1e-12);
  EXPECT_NEAR(surface_area(cube.transformed({2.0, identity3(), {}})), 24.0, 1e-12);

  const SolidMesh ball = shapes::icosphere(1.0, 3);
  const double v = signed_volume(ball);
  EXPECT_GT(v, 4 * kPi / 3 * 0.98);
  EXPECT_LT(v, 4 * kPi / 3);
  EXPECT_NEAR(v, fan_volume(ball, {3, -2, 7}), 1e-12);

  double area = 0;
  for (std::size_t t = 0; t < ball.triangle_count(); ++t) {
    const auto c = ball.corners(t);
    const Vec3 n = cross(c[1] - c[0], c[2] - c[0]);
    area += std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z) / 2;
  }
  EXPECT_NEAR(surface_area(ball), area, 1e-12);
  EXPECT_LT(surface_area(ball), 4 * kPi);
}

// Brute-force hull volume: enumerate all point triples whose plane has every
// other point on one side, and sum the tetra fan of those facets.
double brute_hull_volume(const std::vector<Vec3>& p) {
  const std::size_t n = p.size();
  Vec3 c{};
  for (const Vec3& q : p) c += q;
  c = c / static_cast<double>(n);
  double vol = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t d = b + 1; d < n; ++d) {
        const Vec3 nrm = cross(p[b] - p[a], p[d] - p[a]);
        bool pos = false, neg = false;
        for (std::size_t e = 0; e < n; ++e) {
          const double s = dot(nrm, p[e] - p[a]);
          pos |= s > 1e-12;
          neg |= s < -1e-12;
        }
        if (pos && neg) continue;
        vol += std::abs(dot(p[a] - c, nrm)) / 6;
      }
  return vol;
}

TEST(Hull, CubeCorners) {
  std::vector<Vec3> pts = shapes::unit_cube().vertices();
  pts.push_back({0.5, 0.5, 0.5});
  const SolidMesh h = convex_hull(pts);
  EXPECT_NEAR(signed_volume(h), 1.0, 1e-12);
  EXPECT_EQ(h.vertex_count(), 8u);
  for (const Vec3& v : h.vertices()) EXPECT_NE(v, (Vec3{0.5, 0.5, 0.5}));
  EXPECT_NO_THROW(validate_manifold(h.soup()));
}

TEST(Hull, RandomBallAgainstBruteForce) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) {
      const Vec3 d = normalized(Vec3{g(rng), g(rng), g(rng)});
      pts.push_back(d * std::cbrt(u(rng)));
    }
    const SolidMesh h = convex_hull(pts);
    EXPECT_NO_THROW(validate_manifold(h.soup()));
    EXPECT_LE(signed_volume(h), 4 * kPi / 3);
    const double eps = hull_epsilon(pts);
    for (const Vec3& p : pts)
      for (std::size_t t = 0; t < h.triangle_count(); ++t) {
        const auto c = h.corners(t);
        EXPECT_LE(dot(normalized(cross(c[1] - c[0], c[2] - c[0])), p - c[0]), eps);
      }
    const std::vector<Vec3> sub(pts.begin(), pts.begin() + 20);
    // Facets of a hull in general position are triangles, so the brute-force
    // facet sum matches exactly.
    EXPECT_NEAR(signed_volume(convex_hull(sub)), brute_hull_volume(sub), 1e-12);
  }
}

TEST(Hull, IdempotentAndMatchesConvexMesh) {
  const SolidMesh ball = shapes::icosphere(1.0, 2);
  const SolidMesh h = convex_hull(ball);
  EXPECT_NEAR(signed_volume(h), signed_volume(ball), 1e-6 * signed_volume(ball));
  EXPECT_NEAR(signed_volume(convex_hull(h)), signed_volume(h), 1e-9 * signed_volume(h));
}

TEST(Hull, RejectsFlatInput) {
  const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.2, 0}};
  try {
    convex_hull(pts);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateHull);
  }
}

TEST(Sampling, SurfaceCountAndDeterminism) {
  const SolidMesh cube = shapes::unit_cube();
  const PointSet a = sample_surface(cube, 3000, 11);
  EXPECT_EQ(a.points.size(), 18000u);
  const TriangleIndex index(cube);
  for (const Vec3& p : a.points) EXPECT_LT(index.distance(p), 1e-9);
  const PointSet b = sample_surface(cube, 3000, 11);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(sample_surface(cube, 1, 3).points.size(), kMinSurfaceSamples);
}

TEST(Sampling, FaceCountsWithinMultinomialBound) {
  const PointSet s = sample_surface(shapes::unit_cube(), 3000, 5);
  int counts[6] = {};
  for (const Vec3& p : s.points) {
    for (int a = 0; a < 3; ++a) {
      if (p[a] < 1e-12) ++counts[2 * a];
      else if (p[a] > 1 - 1e-12) ++counts[2 * a + 1];
    }
  }
  const double n = 18000, q = 1.0 / 6;
  const double sigma = std::sqrt(n * q * (1 - q));
  for (int c : counts) EXPECT_LT(std::abs(c - 3000.0), 3 * sigma);
}

TEST(Sampling, InteriorOfCube) {
  const PointSet s = sample_interior(shapes::unit_cube(), 1000, 3);
  ASSERT_EQ(s.points.size(), 1000u);
  for (const Vec3& p : s.points)
    for (int a = 0; a < 3; ++a) {
      EXPECT_GT(p[a], 0);
      EXPECT_LT(p[a], 1);
    }
  EXPECT_EQ(s.points, sample_interior(shapes::unit_cube(), 1000, 3).points);
}

TEST(Sampling, ThinSlabHasNoInterior) {
  try {
    sample_interior(shapes::box({0, 0, 0}, {1, 1, 1e-9}), 1000, 1);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInterior);
  }
}

TEST(Sampling, BallAcceptanceRatio) {
  const SolidMesh ball = shapes::icosphere(1.0, 4);
  InteriorSampleStats stats;
  sample_interior(ball, 20000, 9, &stats);
  // The grid covers the bounding box of the mesh, which is within faceting
  // error of the [-1,1]^3 cube.
  const Vec3 e = ball.bounds().extent();
  const double box_volume = e.x * e.y * e.z;
  const double ratio = static_cast<double>(stats.accepted) / static_cast<double>(stats.candidates);
  const double expected = (4 * kPi / 3) / box_volume;
  EXPECT_NEAR(ratio, expected, 0.05 * expected);
}

// Generalized winding number: sum of solid angles (Van Oosterom-Strackee).
double winding_number(const SolidMesh& m, const Vec3& p) {
  double w = 0;
  for (std::size_t t = 0; t < m.triangle_count(); ++t) {
    const auto c = m.corners(t);
    const Vec3 a = c[0] - p, b = c[1] - p, d = c[2] - p;
    const double la = norm(a), lb = norm(b), ld = norm(d);
    const double num = dot(a, cross(b, d));
    const double den = la * lb * ld + dot(a, b) * ld + dot(b, d) * la + dot(d, a) * lb;
    w += 2 * std::atan2(num, den);
  }
  return w / (4 * kPi);
}

TEST(PointInMesh, CubeBasics) {
  const SolidMesh cube = shapes::unit_cube();
  EXPECT_TRUE(point_in_mesh(cube, {0.5, 0.5, 0.5}));
  EXPECT_FALSE(point_in_mesh(cube, {2, 0, 0}));
  // Query on an edge diagonal exercises the grazing retry.
  EXPECT_TRUE(point_in_mesh(cube, {0.5, 0.5, 0.25}));
}

TEST(PointInMesh, AgreesWithWindingNumber) {
  const std::vector<SolidMesh> meshes{shapes::torus(1.0, 0.3, 24, 12), shapes::l_prism(),
                                      shapes::open_shell(1.0, 0.9, 0.2, 24)};
  std::mt19937_64 rng(17);
  for (const SolidMesh& m : meshes) {
    const TriangleIndex index(m);
    const Box3 b = m.bounds();
    std::uniform_real_distribution<double> ux(b.lo.x - 0.1, b.hi.x + 0.1),
        uy(b.lo.y - 0.1, b.hi.y + 0.1), uz(b.lo.z - 0.1, b.hi.z + 0.1);
    int checked = 0;
    for (int i = 0; i < 3400; ++i) {
      const Vec3 p{ux(rng), uy(rng), uz(rng)};
      if (index.distance(p) <= 1e-6) continue;
      ++checked;
      ASSERT_EQ(index.contains(p), winding_number(m, p) > 0.5) << p.x << " " << p.y << " " << p.z;
    }
    EXPECT_GT(checked, 3000);
  }
}

TEST(Distance, ClosedForms) {
  EXPECT_DOUBLE_EQ(point_triangle_distance({0, 0, 1}, {Vec3{-1, -1, 0}, Vec3{2, -1, 0}, Vec3{0, 2, 0}}),
                   1.0);
  EXPECT_DOUBLE_EQ(point_triangle_distance({3, 0, 0}, {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}}),
                   2.0);
}

TEST(Distance, AgreesWithBarycentricGrid) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const std::array<Vec3, 3> tri{Vec3{u(rng), u(rng), u(rng)}, Vec3{u(rng), u(rng), u(rng)},
                                  Vec3{u(rng), u(rng), u(rng)}};
    const Vec3 p{2 * u(rng), 2 * u(rng), 2 * u(rng)};
    double best = 1e300;
    Vec3 arg{};
    constexpr int kGrid = 200;
    for (int i = 0; i <= kGrid; ++i)
      for (int j = 0; i + j <= kGrid; ++j) {
        const double a = double(i) / kGrid, b = double(j) / kGrid;
        const Vec3 q = tri[0] * (1 - a - b) + tri[1] * a + tri[2] * b;
        if (norm(p - q) < best) {
          best = norm(p - q);
          arg = {a, b, 0};
        }
      }
    // Polish the grid optimum with a local fine search so the oracle reaches 1e-6.
    double step = 1.0 / kGrid;
    for (int it = 0; it < 60; ++it, step *= 0.7) {
      for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db) {
          const double a = std::clamp(arg.x + da * step, 0.0, 1.0);
          const double b = std::clamp(arg.y + db * step, 0.0, 1.0 - a);
          const Vec3 q = tri[0] * (1 - a - b) + tri[1] * a + tri[2] * b;
          if (norm(p - q) < best) {
            best = norm(p - q);
            arg = {a, b, 0};
          }
        }
    }
    EXPECT_NEAR(point_triangle_distance(p, tri), best, 1e-6);
  }
}

TEST(Distance, IndexMatchesBruteForce) {
  const SolidMesh m = shapes::torus(1.0, 0.3, 24, 12);
  const TriangleIndex index(m);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 500; ++i) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    double best = 1e300;
    for (std::size_t t = 0; t < m.triangle_count(); ++t)
      best = std::min(best, point_triangle_distance(p, m.corners(t)));
    EXPECT_EQ(index.distance(p), best);
  }
}

TEST(Pca, AxisAlignedBox) {
  const Transform xf = pca_axes(shapes::box({0, 0, 0}, {1, 4, 2}));
  EXPECT_NEAR(std::abs(xf.axis(0).y), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(xf.axis(1).z), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(xf.axis(2).x), 1.0, 1e-9);
  EXPECT_NEAR(dot(cross(xf.axis(0), xf.axis(1)), xf.axis(2)), 1.0, 1e-9);
}

TEST(Pca, RotatedBox) {
  const double a = kPi / 6;
  Transform rot;
  rot.rotation = {Vec3{std::cos(a), std::sin(a), 0}, Vec3{-std::sin(a), std::cos(a), 0}, Vec3{0, 0, 1}};
  const SolidMesh m = shapes::box({-2, -1, -0.5}, {2, 1, 0.5}).transformed(rot);
  const Transform xf = pca_axes(m);
  const double angle = std::acos(std::min(1.0, std::abs(dot(xf.axis(0), rot.axis(0)))));
  EXPECT_LT(angle, kPi / 180);
}

TEST(Pca, Deterministic) {
  const SolidMesh s = shapes::icosphere(1.0, 2);
  const Transform a = pca_axes(s), b = pca_axes(s);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.axis(i), b.axis(i));
    EXPECT_NEAR(norm(a.axis(i)), 1.0, 1e-9);
  }
}

TEST(Components, SplitsDisjointShells) {
  const SolidMesh a = shapes::unit_cube();
  const SolidMesh b = shapes::box({3, 0, 0}, {4, 1, 1});
  const auto parts = connected_components(SolidMesh::concatenate(a, b));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_NEAR(signed_volume(parts[0]) + signed_volume(parts[1]), 2.0, 1e-12);
  for (const auto& p : parts) EXPECT_NO_THROW(validate_manifold(p.soup()));
  EXPECT_EQ(connected_components(a).size(), 1u);
}

TEST(Components, VoidStaysWithEnclosingSolid) {
  const SolidMesh m = shapes::cube_with_void();
  std::size_t shells = 0;
  shell_labels(m, &shells);
  EXPECT_EQ(shells, 2u);
  const auto parts = connected_components(m);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_NEAR(signed_volume(parts[0]), 26.0, 1e-9);
  // Containment oracle: the void's center lies in the outer shell but not in the solid.
  EXPECT_FALSE(point_in_mesh(parts[0], {1.5, 1.5, 1.5}));
  EXPECT_TRUE(point_in_mesh(parts[0], {0.5, 1.5, 1.5}));
}

TEST(Components, PreserveVolumeAndArea) {
  const SolidMesh a = shapes::torus(1.0, 0.3, 16, 8);
  const SolidMesh b = shapes::box({3, 3, 3}, {4, 5, 6});
  const SolidMesh both = SolidMesh::concatenate(a, b);
  double v = 0, s = 0;
  for (const auto& p : connected_components(both)) {
    v += signed_volume(p);
    s += surface_area(p);
  }
  EXPECT_NEAR(v, signed_volume(both), 1e-9 * signed_volume(both));
  EXPECT_NEAR(s, surface_area(both), 1e-9 * surface_area(both));
}

}  // namespace
}  // namespace hullcut
