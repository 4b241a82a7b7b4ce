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

#include "hullcut/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hullcut/error.hpp"

namespace hullcut {
namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw GeometryError(ErrorCode::ParseError, where + ": " + what);
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_double(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(v);
}

bool to_long(std::string_view s, long& v) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

struct ObjFace {
  std::vector<long> corners;  // 0-based global vertex ids
  std::size_t line;
};

// Reads all records; `object_of_face` receives the object index of each face.
void read_obj_records(std::istream& in, std::vector<Vec3>& vertices, std::vector<ObjFace>& faces,
                      std::vector<std::string>& objects, std::vector<std::size_t>& object_of_face) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    const auto tok = tokens(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "v") {
      if (tok.size() < 4) parse_fail(where, "vertex needs three coordinates");
      Vec3 p;
      for (int i = 0; i < 3; ++i)
        if (!to_double(tok[i + 1], p[i])) parse_fail(where, "bad coordinate '" + std::string(tok[i + 1]) + "'");
      vertices.push_back(p);
    } else if (tok[0] == "f") {
      if (tok.size() < 4) parse_fail(where, "face needs at least three corners");
      ObjFace f{{}, line_no};
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const std::string_view idx = tok[i].substr(0, tok[i].find('/'));
        long k;
        if (!to_long(idx, k) || k == 0) parse_fail(where, "bad face index '" + std::string(tok[i]) + "'");
        const long n = static_cast<long>(vertices.size());
        const long id = k > 0 ? k - 1 : n + k;
        if (id < 0 || id >= n) parse_fail(where, "face index " + std::to_string(k) + " out of range");
        f.corners.push_back(id);
      }
      if (objects.empty()) objects.emplace_back();
      faces.push_back(std::move(f));
      object_of_face.push_back(objects.size() - 1);
    } else if (tok[0] == "o") {
      objects.emplace_back(tok.size() > 1 ? std::string(tok[1]) : std::string());
    }
  }
  if (in.bad()) throw GeometryError(ErrorCode::IoError, "read failed");
}

void fan(const std::vector<long>& c, std::vector<Triangle>& out,
         const std::function<std::uint32_t(long)>& map) {
  for (std::size_t i = 1; i + 1 < c.size(); ++i) out.push_back({map(c[0]), map(c[i]), map(c[i + 1])});
}

// Merges corners closer than tol, in order of first appearance.
TriangleSoup weld(const std::vector<Vec3>& corners, double tol) {
  TriangleSoup soup;
  struct KeyHash {
    std::size_t operator()(const std::array<std::int64_t, 3>& k) const {
      return static_cast<std::size_t>(k[0] * 73856093 ^ k[1] * 19349663 ^ k[2] * 83492791);
    }
  };
  std::unordered_map<std::array<std::int64_t, 3>, std::vector<std::uint32_t>, KeyHash> grid;
  const double cell = tol > 0 ? tol : 1.0;
  std::vector<std::uint32_t> ids(corners.size());
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const Vec3& p = corners[i];
    const std::array<std::int64_t, 3> key{static_cast<std::int64_t>(std::floor(p.x / cell)),
                                          static_cast<std::int64_t>(std::floor(p.y / cell)),
                                          static_cast<std::int64_t>(std::floor(p.z / cell))};
    std::int64_t found = -1;
    for (int dx = -1; dx <= 1 && found < 0; ++dx)
      for (int dy = -1; dy <= 1 && found < 0; ++dy)
        for (int dz = -1; dz <= 1 && found < 0; ++dz) {
          auto it = grid.find({key[0] + dx, key[1] + dy, key[2] + dz});
          if (it == grid.end()) continue;
          for (std::uint32_t v : it->second)
            if (norm(soup.vertices[v] - p) <= tol && (found < 0 || v < found)) found = v;
        }
    if (found < 0) {
      found = static_cast<std::int64_t>(soup.vertices.size());
      soup.vertices.push_back(p);
      grid[key].push_back(static_cast<std::uint32_t>(found));
    }
    ids[i] = static_cast<std::uint32_t>(found);
  }
  for (std::size_t i = 0; i + 2 < ids.size(); i += 3) soup.triangles.push_back({ids[i], ids[i + 1], ids[i + 2]});
  return soup;
}

double weld_tolerance(const std::vector<Vec3>& corners) {
  return kWeldRel * bounding_box(corners).diagonal();
}

TriangleSoup parse_stl_binary(std::string_view bytes) {
  std::uint32_t n;
  std::memcpy(&n, bytes.data() + 80, 4);
  std::vector<Vec3> corners;
  corners.reserve(3 * static_cast<std::size_t>(n));
  for (std::uint32_t t = 0; t < n; ++t) {
    const std::size_t base = 84 + 50 * static_cast<std::size_t>(t) + 12;
    for (int c = 0; c < 3; ++c) {
      float xyz[3];
      std::memcpy(xyz, bytes.data() + base + 12 * c, 12);
      const Vec3 p{xyz[0], xyz[1], xyz[2]};
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        parse_fail("byte " + std::to_string(base + 12 * c), "non-finite coordinate");
      corners.push_back(p);
    }
  }
  return weld(corners, weld_tolerance(corners));
}

TriangleSoup parse_stl_ascii(std::string_view bytes) {
  std::vector<Vec3> corners;
  std::size_t line_no = 0, in_facet = 0;
  std::size_t pos = 0;
  bool solid = false;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    const std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "solid") {
      solid = true;
    } else if (tok[0] == "facet") {
      in_facet = corners.size() + 1;
    } else if (tok[0] == "vertex") {
      if (!in_facet) parse_fail(where, "vertex outside facet");
      if (tok.size() != 4) parse_fail(where, "vertex needs three coordinates");
      Vec3 p;
      for (int i = 0; i < 3; ++i)
        if (!to_double(tok[i + 1], p[i])) parse_fail(where, "bad coordinate '" + std::string(tok[i + 1]) + "'");
      corners.push_back(p);
    } else if (tok[0] == "endfacet") {
      if (corners.size() + 1 - in_facet != 3) parse_fail(where, "facet must have exactly three vertices");
      in_facet = 0;
    } else if (tok[0] != "outer" && tok[0] != "endloop" && tok[0] != "endsolid") {
      parse_fail(where, "unexpected '" + std::string(tok[0]) + "'");
    }
  }
  if (!solid) parse_fail("line 1", "missing 'solid'");
  if (in_facet) parse_fail("line " + std::to_string(line_no), "unterminated facet");
  return weld(corners, weld_tolerance(corners));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GeometryError(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw GeometryError(ErrorCode::IoError, "read failed: " + path.string());
  return ss.str();
}

std::string format_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0 ? 0.0 : v);  // no "-0"
  return buf;
}

}  // namespace

TriangleSoup parse_obj(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<ObjFace> faces;
  std::vector<std::string> objects;
  std::vector<std::size_t> object_of_face;
  read_obj_records(in, vertices, faces, objects, object_of_face);
  TriangleSoup soup;
  soup.vertices = std::move(vertices);
  for (const ObjFace& f : faces)
    fan(f.corners, soup.triangles, [](long v) { return static_cast<std::uint32_t>(v); });
  return soup;
}

std::vector<ObjObject> parse_obj_objects(std::istream& in) {
  std::vector<Vec3> vertices;
  std::vector<ObjFace> faces;
  std::vector<std::string> objects;
  std::vector<std::size_t> object_of_face;
  read_obj_records(in, vertices, faces, objects, object_of_face);
  std::vector<ObjObject> out(objects.size());
  std::vector<std::map<long, std::uint32_t>> local(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) out[i].name = objects[i];
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const std::size_t o = object_of_face[f];
    fan(faces[f].corners, out[o].soup.triangles, [&](long v) {
      auto [it, fresh] = local[o].try_emplace(v, static_cast<std::uint32_t>(out[o].soup.vertices.size()));
      if (fresh) out[o].soup.vertices.push_back(vertices[v]);
      return it->second;
    });
  }
  return out;
}

TriangleSoup parse_stl(std::string_view bytes) {
  if (bytes.size() >= 84) {
    std::uint32_t n;
    std::memcpy(&n, bytes.data() + 80, 4);
    if (84 + 50 * static_cast<std::uint64_t>(n) == bytes.size()) return parse_stl_binary(bytes);
  }
  if (bytes.size() < 5 || bytes.substr(0, 5) != "solid") {
    if (bytes.size() < 84) parse_fail("byte " + std::to_string(bytes.size()), "truncated binary STL");
    parse_fail("byte 80", "triangle count does not match file size");
  }
  return parse_stl_ascii(bytes);
}

SolidMesh read_mesh(const std::filesystem::path& path, MeshFormat format) {
  if (format == MeshFormat::Auto) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".obj")
      format = MeshFormat::Obj;
    else if (ext == ".stl")
      format = MeshFormat::Stl;
    else
      throw GeometryError(ErrorCode::ParseError, "unknown mesh extension '" + ext + "'");
  }
  const std::string bytes = read_file(path);
  if (format == MeshFormat::Stl) return validate_manifold(parse_stl(bytes));
  std::istringstream in(bytes);
  return validate_manifold(parse_obj(in));
}

void write_obj(std::ostream& out, const std::vector<const SolidMesh*>& meshes,
               const std::vector<std::string>& names) {
  std::size_t base = 1;
  for (std::size_t k = 0; k < meshes.size(); ++k) {
    out << "o " << names[k] << '\n';
    for (const Vec3& v : meshes[k]->vertices())
      out << "v " << format_coord(v.x) << ' ' << format_coord(v.y) << ' ' << format_coord(v.z) << '\n';
    for (const Triangle& t : meshes[k]->triangles())
      out << "f " << t[0] + base << ' ' << t[1] + base << ' ' << t[2] + base << '\n';
    base += meshes[k]->vertex_count();
  }
}

std::vector<std::filesystem::path> write_decomposition(const Decomposition& decomposition,
                                                       const std::filesystem::path& path,
                                                       OutputMode mode) {
  std::vector<const SolidMesh*> meshes;
  for (const Part& p : decomposition.parts) meshes.push_back(p.hull.empty() ? &p.component : &p.hull);

  auto write_file = [](const std::filesystem::path& file, const std::vector<const SolidMesh*>& ms,
                       const std::vector<std::string>& names) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw GeometryError(ErrorCode::IoError, "cannot write " + file.string());
    write_obj(out, ms, names);
    out.flush();
    if (!out) throw GeometryError(ErrorCode::IoError, "write failed: " + file.string());
  };

  std::vector<std::filesystem::path> written;
  if (mode == OutputMode::SingleFile) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < meshes.size(); ++k) names.push_back("part_" + std::to_string(k));
    write_file(path, meshes, names);
    written.push_back(path);
  } else {
    const std::filesystem::path dir = path.parent_path();
    const std::string stem = path.stem().string();
    for (std::size_t k = 0; k < meshes.size(); ++k) {
      const std::filesystem::path file = dir / (stem + "_part" + std::to_string(k) + ".obj");
      write_file(file, {meshes[k]}, {"part_" + std::to_string(k)});
      written.push_back(file);
    }
  }
  return written;
}

}  // namespace hullcut
