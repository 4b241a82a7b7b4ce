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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hullcut/mesh.hpp"
#include "hullcut/pipeline.hpp"

namespace hullcut {

enum class MeshFormat { Auto, Obj, Stl };

inline constexpr double kWeldRel = 1e-6;  // x bbox diagonal

/// OBJ: `v` and `f` records; faces may be polygons (fan-triangulated), use
/// `a/b/c` forms or negative indices. Other records are ignored.
/// Throws ParseError with the line number.
TriangleSoup parse_obj(std::istream& in);

struct ObjObject {
  std::string name;
  TriangleSoup soup;  // vertices local to the object
};

/// Splits at `o` records; faces are assigned to the current object.
std::vector<ObjObject> parse_obj_objects(std::istream& in);

/// ASCII or binary STL, detected from content. Corners are welded within
/// kWeldRel of the bounding-box diagonal. Throws ParseError with a line
/// number (ASCII) or byte offset (binary).
TriangleSoup parse_stl(std::string_view bytes);

/// Reads and validates. Format Auto picks by extension. Throws IoError,
/// ParseError or the validation errors of validate_manifold.
SolidMesh read_mesh(const std::filesystem::path& path, MeshFormat format = MeshFormat::Auto);

/// One OBJ object `o <name>` per mesh; 9 significant digits.
void write_obj(std::ostream& out, const std::vector<const SolidMesh*>& meshes,
               const std::vector<std::string>& names);

enum class OutputMode { SingleFile, PerPart };

/// Writes the hulls of a decomposition. Single-file mode names objects
/// `part_<k>`; per-part mode writes `<stem>_part<k>.obj` next to `path`.
/// Returns the files written. Throws IoError.
std::vector<std::filesystem::path> write_decomposition(const Decomposition& decomposition,
                                                       const std::filesystem::path& path,
                                                       OutputMode mode = OutputMode::SingleFile);

}  // namespace hullcut
