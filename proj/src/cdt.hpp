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
#include <span>
#include <vector>

#include "hullcut/geometry.hpp"

namespace hullcut::detail {

using Edge2 = std::array<std::uint32_t, 2>;

/// Constrained Delaunay triangulation of the region enclosed by `constraints`
/// under the even-odd rule. Returns counter-clockwise index triples into
/// `points`; no Steiner points are added. Throws TriangulationFailure.
std::vector<std::array<std::uint32_t, 3>> triangulate_region(std::span<const Vec2> points,
                                                             std::span<const Edge2> constraints);

}  // namespace hullcut::detail
