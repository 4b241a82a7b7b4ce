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

#include "hullcut/mesh.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hullcut/spatial.hpp"

namespace hullcut {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::OpenBoundary: return "OpenBoundary";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::ZeroVolume: return "ZeroVolume";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::OpenChain: return "OpenChain";
    case ErrorCode::TriangulationFailure: return "TriangulationFailure";
    case ErrorCode::NoValidCandidates: return "NoValidCandidates";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

struct EdgeUse {
  std::uint64_t key;  // min << 32 | max
  std::uint32_t tri;
  bool forward;       // stored direction is min -> max
};

std::string edge_name(std::uint32_t a, std::uint32_t b) {
  std::ostringstream os;
  os << "edge (" << a << ", " << b << ")";
  return os.str();
}

}  // namespace

SolidMesh SolidMesh::from_trusted(std::vector<Vec3> vertices, std::vector<Triangle> triangles) {
  SolidMesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  return m;
}

SolidMesh SolidMesh::transformed(const Transform& xf) const {
  SolidMesh m = *this;
  for (Vec3& v : m.vertices_) v = xf.apply(v);
  return m;
}

SolidMesh SolidMesh::transformed_inverse(const Transform& xf) const {
  SolidMesh m = *this;
  for (Vec3& v : m.vertices_) v = xf.apply_inverse(v);
  return m;
}

SolidMesh SolidMesh::concatenate(const SolidMesh& a, const SolidMesh& b) {
  SolidMesh m = a;
  const auto base = static_cast<std::uint32_t>(a.vertices_.size());
  m.vertices_.insert(m.vertices_.end(), b.vertices_.begin(), b.vertices_.end());
  for (const Triangle& t : b.triangles_) m.triangles_.push_back({t[0] + base, t[1] + base, t[2] + base});
  return m;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

double signed_volume(std::span<const Vec3> vertices, std::span<const Triangle> triangles) {
  double vol = 0;
  for (const Triangle& t : triangles)
    vol += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]]));
  return vol / 6.0;
}

double signed_volume(const SolidMesh& mesh) {
  return signed_volume(mesh.vertices(), mesh.triangles());
}

double surface_area(const SolidMesh& mesh) {
  double area = 0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto c = mesh.corners(t);
    area += triangle_area(c[0], c[1], c[2]);
  }
  return area;
}

SolidMesh validate_manifold(const TriangleSoup& soup) {
  const std::size_t nv = soup.vertices.size();
  if (soup.triangles.empty()) throw GeometryError(ErrorCode::ZeroVolume, "mesh has no triangles");

  std::vector<std::uint32_t> remap(nv, UINT32_MAX);
  for (std::size_t t = 0; t < soup.triangles.size(); ++t) {
    for (std::uint32_t v : soup.triangles[t]) {
      if (v >= nv) {
        throw GeometryError(ErrorCode::IndexOutOfRange,
                            "triangle " + std::to_string(t) + " references vertex " +
                                std::to_string(v) + " of " + std::to_string(nv),
                            {t});
      }
      remap[v] = 0;
    }
  }
  std::vector<Vec3> vertices;
  vertices.reserve(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (remap[v] == 0) {
      remap[v] = static_cast<std::uint32_t>(vertices.size());
      vertices.push_back(soup.vertices[v]);
    }
  }
  std::vector<Triangle> triangles(soup.triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t)
    for (int k = 0; k < 3; ++k) triangles[t][k] = remap[soup.triangles[t][k]];

  const Box3 box = bounding_box(vertices);
  const double half = std::max(box.max_extent() * 0.5, std::numeric_limits<double>::min());
  const double area_eps = Tolerances::kAreaEps * half * half;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const Triangle& tri = triangles[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] ||
        triangle_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]) <= area_eps) {
      throw GeometryError(ErrorCode::DegenerateTriangle,
                          "triangle " + std::to_string(t) + " has (near) zero area", {t});
    }
  }

  // Reported indices refer to the caller's vertex numbering.
  std::vector<std::uint32_t> original(vertices.size());
  for (std::size_t v = 0; v < nv; ++v)
    if (remap[v] != UINT32_MAX) original[remap[v]] = static_cast<std::uint32_t>(v);

  std::vector<EdgeUse> edges;
  edges.reserve(triangles.size() * 3);
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = triangles[t][k], b = triangles[t][(k + 1) % 3];
      const std::uint64_t key = (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
      edges.push_back({key, static_cast<std::uint32_t>(t), a < b});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeUse& l, const EdgeUse& r) {
    return l.key != r.key ? l.key < r.key : l.tri < r.tri;
  });

  const EdgeUse* open = nullptr;
  const EdgeUse* flipped = nullptr;
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    while (j < edges.size() && edges[j].key == edges[i].key) ++j;
    const auto a = original[edges[i].key >> 32];
    const auto b = original[edges[i].key & 0xffffffffu];
    if (j - i > 2) {
      throw GeometryError(ErrorCode::NonManifoldEdge,
                          edge_name(a, b) + " is shared by " + std::to_string(j - i) + " triangles",
                          {a, b});
    }
    if (j - i == 1 && !open) open = &edges[i];
    if (j - i == 2 && edges[i].forward == edges[i + 1].forward && !flipped) flipped = &edges[i];
    i = j;
  }
  if (open) {
    const auto a = original[open->key >> 32];
    const auto b = original[open->key & 0xffffffffu];
    throw GeometryError(ErrorCode::OpenBoundary,
                        "boundary " + edge_name(a, b) + " of triangle " + std::to_string(open->tri),
                        {a, b});
  }
  if (flipped) {
    const auto a = original[flipped->key >> 32];
    const auto b = original[flipped->key & 0xffffffffu];
    throw GeometryError(ErrorCode::InconsistentOrientation,
                        edge_name(a, b) + " is traversed in the same direction twice", {a, b});
  }

  double vol = signed_volume(vertices, triangles);
  if (vol < 0) {
    for (Triangle& t : triangles) std::swap(t[1], t[2]);
    vol = -vol;
  }
  if (vol <= Tolerances::kAreaEps * half * half * half) {
    throw GeometryError(ErrorCode::ZeroVolume, "enclosed volume is " + std::to_string(vol));
  }
  return SolidMesh::from_trusted(std::move(vertices), std::move(triangles));
}

std::vector<std::uint32_t> shell_labels(const SolidMesh& mesh, std::size_t* shell_count) {
  DisjointSets sets(mesh.vertex_count());
  for (const Triangle& t : mesh.triangles()) {
    sets.unite(t[0], t[1]);
    sets.unite(t[1], t[2]);
  }
  std::vector<std::uint32_t> root_label(mesh.vertex_count(), UINT32_MAX);
  std::vector<std::uint32_t> labels(mesh.triangle_count());
  std::uint32_t next = 0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const std::uint32_t r = sets.find(mesh.triangles()[t][0]);
    if (root_label[r] == UINT32_MAX) root_label[r] = next++;
    labels[t] = root_label[r];
  }
  if (shell_count) *shell_count = next;
  return labels;
}

namespace {

SolidMesh extract(const SolidMesh& mesh, const std::vector<std::uint32_t>& labels,
                  std::span<const std::uint32_t> wanted) {
  std::vector<std::uint32_t> remap(mesh.vertex_count(), UINT32_MAX);
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    if (std::find(wanted.begin(), wanted.end(), labels[t]) == wanted.end()) continue;
    Triangle tri = mesh.triangles()[t];
    for (auto& v : tri) {
      if (remap[v] == UINT32_MAX) {
        remap[v] = static_cast<std::uint32_t>(vertices.size());
        vertices.push_back(mesh.vertices()[v]);
      }
      v = remap[v];
    }
    triangles.push_back(tri);
  }
  return SolidMesh::from_trusted(std::move(vertices), std::move(triangles));
}

}  // namespace

std::vector<SolidMesh> connected_components(const SolidMesh& mesh) {
  std::size_t count = 0;
  const auto labels = shell_labels(mesh, &count);
  if (count <= 1) return {mesh};

  std::vector<SolidMesh> shells;
  std::vector<double> volumes;
  for (std::uint32_t s = 0; s < count; ++s) {
    const std::uint32_t one[] = {s};
    shells.push_back(extract(mesh, labels, one));
    volumes.push_back(signed_volume(shells.back()));
  }

  std::vector<std::vector<std::uint32_t>> groups;
  std::vector<int> group_of(count, -1);
  for (std::uint32_t s = 0; s < count; ++s) {
    if (volumes[s] > 0) {
      group_of[s] = static_cast<int>(groups.size());
      groups.push_back({s});
    }
  }
  for (std::uint32_t s = 0; s < count; ++s) {
    if (volumes[s] > 0) continue;
    int best = -1;
    const Vec3 probe = shells[s].vertices().front();
    for (std::uint32_t o = 0; o < count; ++o) {
      if (volumes[o] <= 0 || !shells[o].bounds().overlaps(shells[s].bounds())) continue;
      if (!point_in_mesh(shells[o], probe)) continue;
      if (best < 0 || volumes[o] < volumes[best]) best = static_cast<int>(o);
    }
    // An inverted shell enclosed by nothing is malformed input; keep volumes
    // additive by attaching it to the first solid.
    if (best < 0) {
      if (groups.empty()) return {mesh};
      best = static_cast<int>(groups.front().front());
    }
    groups[group_of[best]].push_back(s);
  }

  std::vector<SolidMesh> out;
  out.reserve(groups.size());
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(g.size() == 1 ? std::move(shells[g[0]]) : extract(mesh, labels, g));
  }
  return out;
}

long euler_characteristic(const SolidMesh& mesh) {
  const long f = static_cast<long>(mesh.triangle_count());
  return static_cast<long>(mesh.vertex_count()) - (3 * f) / 2 + f;
}

}  // namespace hullcut
