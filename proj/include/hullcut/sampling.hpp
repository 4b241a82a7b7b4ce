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

#include <cstdint>
#include <random>
#include <vector>

#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"

namespace hullcut {

class TriangleIndex;

/// Seeded generator with a portable uniform mapping; std distributions are
/// implementation-defined, which would break cross-platform determinism.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * n) % n; }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream id so sub-computations get independent,
/// reproducible generators.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

enum class Provenance { Surface, Interior };

struct PointSet {
  std::vector<Vec3> points;
  Provenance provenance = Provenance::Surface;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinSurfaceSamples = 1000;

/// Area-proportional uniform surface samples:
/// count = max(min_samples, round(area * density)).
PointSet sample_surface(const SolidMesh& mesh, double density, std::uint64_t seed,
                        std::size_t min_samples = kMinSurfaceSamples);

struct InteriorSampleStats {
  std::size_t candidates = 0;  // jittered grid candidates in the final pass
  std::size_t accepted = 0;    // candidates that passed the parity test
  double cell = 0;             // grid spacing of the final pass
};

/// Stratified-jittered grid over the bounding box filtered by ray parity.
/// Throws EmptyInterior if nothing is accepted within the oversampling budget.
PointSet sample_interior(const SolidMesh& mesh, std::size_t count, std::uint64_t seed,
                         InteriorSampleStats* stats = nullptr);
PointSet sample_interior(const SolidMesh& mesh, const TriangleIndex& index, std::size_t count,
                         std::uint64_t seed, InteriorSampleStats* stats = nullptr);

}  // namespace hullcut
