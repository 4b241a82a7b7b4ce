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

#include "hullcut/pca.hpp"

#include <Eigen/Eigenvalues>

namespace hullcut {

Transform pca_axes(const SolidMesh& mesh) {
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  Eigen::Vector3d first = Eigen::Vector3d::Zero();
  double area = 0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto c = mesh.corners(t);
    const double a = triangle_area(c[0], c[1], c[2]);
    const Eigen::Vector3d p0(c[0].x, c[0].y, c[0].z), p1(c[1].x, c[1].y, c[1].z),
        p2(c[2].x, c[2].y, c[2].z);
    const Eigen::Vector3d s = p0 + p1 + p2;
    // Exact surface integral of x x^T over a triangle.
    second += (a / 12.0) * (s * s.transpose() + p0 * p0.transpose() + p1 * p1.transpose() +
                            p2 * p2.transpose());
    first += (a / 3.0) * s;
    area += a;
  }
  const Eigen::Vector3d mean = first / area;
  const Eigen::Matrix3d cov = second / area - mean * mean.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  Transform xf;
  for (int col = 0; col < 3; ++col) {
    Eigen::Vector3d v = solver.eigenvectors().col(2 - col);
    int big = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(v[i]) > std::abs(v[big]) + 1e-12) big = i;
    if (v[big] < 0) v = -v;
    xf.rotation[col] = normalized(Vec3{v[0], v[1], v[2]});
  }
  if (dot(cross(xf.rotation[0], xf.rotation[1]), xf.rotation[2]) < 0) xf.rotation[2] = -xf.rotation[2];
  return xf;
}

}  // namespace hullcut
