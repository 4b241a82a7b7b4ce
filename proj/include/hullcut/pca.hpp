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

#include "hullcut/geometry.hpp"
#include "hullcut/mesh.hpp"

namespace hullcut {

/// Principal axes of the surface (exact area-weighted covariance integral).
/// Columns of the returned rotation are eigenvectors sorted by descending
/// eigenvalue; each column's largest-magnitude entry is positive except the
/// last, which is flipped when needed to keep det = +1.
Transform pca_axes(const SolidMesh& mesh);

}  // namespace hullcut
