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

#include "hullcut/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "hullcut/spatial.hpp"

namespace hullcut {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

PointSet sample_surface(const SolidMesh& mesh, double density, std::uint64_t seed,
                        std::size_t min_samples) {
  if (!(density > 0)) throw std::invalid_argument("sample_surface: density must be positive");
  const std::size_t nt = mesh.triangle_count();
  std::vector<double> cumulative(nt);
  double total = 0;
  for (std::size_t t = 0; t < nt; ++t) {
    const auto c = mesh.corners(t);
    total += triangle_area(c[0], c[1], c[2]);
    cumulative[t] = total;
  }
  const auto count =
      std::max(min_samples, static_cast<std::size_t>(std::llround(total * density)));

  PointSet out{{}, Provenance::Surface, seed};
  out.points.reserve(count);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = rng.uniform() * total;
    const std::size_t t = std::min<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin(), nt - 1);
    const auto c = mesh.corners(t);
    const double s = std::sqrt(rng.uniform()), w = rng.uniform();
    out.points.push_back(c[0] * (1 - s) + c[1] * (s * (1 - w)) + c[2] * (s * w));
  }
  return out;
}

PointSet sample_interior(const SolidMesh& mesh, std::size_t count, std::uint64_t seed,
                         InteriorSampleStats* stats) {
  return sample_interior(mesh, TriangleIndex(mesh), count, seed, stats);
}

PointSet sample_interior(const SolidMesh& mesh, const TriangleIndex& index, std::size_t count,
                         std::uint64_t seed, InteriorSampleStats* stats) {
  if (count == 0) throw std::invalid_argument("sample_interior: count must be positive");
  const Box3 box = mesh.bounds();
  const Vec3 ext = box.extent();
  const double max_ext = box.max_extent();
  const double volume = std::abs(signed_volume(mesh));
  const double budget = 64.0 * static_cast<double>(count);

  auto cells_for = [&](double h) {
    double n = 1;
    for (int i = 0; i < 3; ++i) n *= std::max(1.0, std::ceil(ext[i] / h - 1e-9));
    return n;
  };
  // Cubic cells sized for ~1.25x the requested count inside the solid, with
  // the longest axis tiled exactly; clamp to the candidate budget.
  auto snap = [&](double h) { return max_ext / std::max(1.0, std::round(max_ext / h)); };
  double h = snap(std::cbrt(volume / (1.25 * static_cast<double>(count))));
  while (cells_for(h) > budget) h = snap(h * 1.25);

  Rng rng(seed);
  std::vector<Vec3> accepted;
  std::size_t candidates_total = 0;
  for (int round = 0; round < 12; ++round) {
    accepted.clear();
    int n[3];
    for (int i = 0; i < 3; ++i) n[i] = static_cast<int>(std::max(1.0, std::ceil(ext[i] / h - 1e-9)));
    std::size_t candidates = 0;
    for (int k = 0; k < n[2]; ++k) {
      for (int j = 0; j < n[1]; ++j) {
        for (int i = 0; i < n[0]; ++i) {
          const Vec3 p{box.lo.x + (i + rng.uniform()) * h, box.lo.y + (j + rng.uniform()) * h,
                       box.lo.z + (k + rng.uniform()) * h};
          ++candidates;
          if (index.contains(p)) accepted.push_back(p);
        }
      }
    }
    candidates_total += candidates;
    if (stats) *stats = {candidates, accepted.size(), h};
    if (accepted.size() >= count) break;
    if (accepted.empty() && static_cast<double>(candidates_total) >= budget) break;
    h = snap(h / 1.26);
  }
  if (accepted.empty()) {
    throw GeometryError(ErrorCode::EmptyInterior,
                        "no interior point found among " + std::to_string(candidates_total) +
                            " candidates");
  }
  if (accepted.size() < count) {
    throw GeometryError(ErrorCode::EmptyInterior,
                        "only " + std::to_string(accepted.size()) + " interior points found");
  }
  // Partial Fisher-Yates keeps the subset uniform over the strata.
  for (std::size_t i = 0; i < count; ++i) std::swap(accepted[i], accepted[i + rng.below(accepted.size() - i)]);
  accepted.resize(count);
  return {std::move(accepted), Provenance::Interior, seed};
}

}  // namespace hullcut
