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

#include "cdt.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <unordered_set>

#include "hullcut/error.hpp"

namespace hullcut::detail {
namespace {

using Real = long double;

[[noreturn]] void fail(const std::string& why) {
  throw GeometryError(ErrorCode::TriangulationFailure, why);
}

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  return (std::uint64_t{std::min(a, b)} << 32) | std::max(a, b);
}

struct Tri {
  std::array<std::uint32_t, 3> v;
  std::array<int, 3> n{-1, -1, -1};  // n[i] is across the edge opposite v[i]
  bool alive = true;
};

inline int next(int i) { return i == 2 ? 0 : i + 1; }
inline int prev(int i) { return i == 0 ? 2 : i - 1; }

class Triangulation {
 public:
  explicit Triangulation(std::span<const Vec2> input) {
    Box3 box;
    for (const Vec2& p : input) box.extend(Vec3{p.x, p.y, 0});
    const Vec3 c = box.center();
    const double s = std::max(box.max_extent(), std::numeric_limits<double>::min());
    pts_.reserve(input.size() + 3);
    for (const Vec2& p : input) pts_.push_back({(p.x - c.x) / s, (p.y - c.y) / s});
    super_ = static_cast<std::uint32_t>(pts_.size());
    pts_.push_back({-20, -20});
    pts_.push_back({20, -20});
    pts_.push_back({0, 20});
    vert_tri_.assign(pts_.size(), -1);
    add_tri({super_, super_ + 1, super_ + 2});
  }

  void insert_all() {
    // Randomized order keeps cavities small on ordered input such as polygon loops.
    std::vector<std::uint32_t> order(super_);
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), std::mt19937(0x5eed));
    for (std::uint32_t i : order) insert(i);
  }

  void enforce(std::span<const Edge2> constraints) {
    for (const Edge2& e : constraints) constrained_.insert(edge_key(e[0], e[1]));
    for (const Edge2& e : constraints) recover(e[0], e[1]);
  }

  std::vector<std::array<std::uint32_t, 3>> region() const {
    std::vector<int> parity(tris_.size(), -1);
    std::deque<int> queue;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive || !touches_super(t)) continue;
      parity[t] = 0;
      queue.push_back(t);
    }
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop_front();
      for (int i = 0; i < 3; ++i) {
        const int o = tris_[t].n[i];
        if (o < 0) continue;
        const bool wall = constrained_.count(edge_key(tris_[t].v[next(i)], tris_[t].v[prev(i)])) > 0;
        const int p = parity[t] ^ static_cast<int>(wall);
        if (parity[o] < 0) {
          parity[o] = p;
          queue.push_back(o);
        } else if (parity[o] != p) {
          fail("constraint loops do not bound a consistent region");
        }
      }
    }
    std::vector<std::array<std::uint32_t, 3>> out;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
      if (!tris_[t].alive || parity[t] != 1) continue;
      if (touches_super(t)) fail("region leaks to the outer face");
      const auto& v = tris_[t].v;
      if (orient(v[0], v[1], v[2]) <= 0) fail("inverted output triangle");
      out.push_back(v);
    }
    return out;
  }

 private:
  Real orient(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    const Real ax = pts_[a].x, ay = pts_[a].y;
    return (Real(pts_[b].x) - ax) * (Real(pts_[c].y) - ay) -
           (Real(pts_[b].y) - ay) * (Real(pts_[c].x) - ax);
  }

  // > 0 when d lies inside the circumcircle of counter-clockwise (a, b, c).
  Real incircle(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
    const Real dx = pts_[d].x, dy = pts_[d].y;
    const Real ax = pts_[a].x - dx, ay = pts_[a].y - dy;
    const Real bx = pts_[b].x - dx, by = pts_[b].y - dy;
    const Real cx = pts_[c].x - dx, cy = pts_[c].y - dy;
    return (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay) +
           (cx * cx + cy * cy) * (ax * by - bx * ay);
  }

  bool touches_super(int t) const {
    for (std::uint32_t v : tris_[t].v)
      if (v >= super_) return true;
    return false;
  }

  int add_tri(std::array<std::uint32_t, 3> v) {
    tris_.push_back({v});
    const int id = static_cast<int>(tris_.size()) - 1;
    for (std::uint32_t x : v) vert_tri_[x] = id;
    return id;
  }

  void relink(int outer, int from, int to) {
    if (outer < 0) return;
    for (int& n : tris_[outer].n)
      if (n == from) n = to;
  }

  int locate(std::uint32_t p) const {
    int t = last_;
    while (!tris_[t].alive) --t;
    for (std::size_t steps = 0; steps < 4 * tris_.size() + 16; ++steps) {
      bool moved = false;
      for (int k = 0; k < 3; ++k) {
        const int i = (k + static_cast<int>(steps)) % 3;
        const auto& tri = tris_[t];
        if (orient(tri.v[next(i)], tri.v[prev(i)], p) < 0 && tri.n[i] >= 0) {
          t = tri.n[i];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
      const auto& tri = tris_[i];
      if (tri.alive && orient(tri.v[0], tri.v[1], p) >= 0 && orient(tri.v[1], tri.v[2], p) >= 0 &&
          orient(tri.v[2], tri.v[0], p) >= 0)
        return i;
    }
    fail("point location failed");
  }

  void insert(std::uint32_t p) {
    const int start = locate(p);
    for (std::uint32_t v : tris_[start].v)
      if (pts_[v] == pts_[p]) fail("duplicate cross-section vertex");

    std::vector<int> cavity{start};
    mark_.resize(tris_.size(), 0);
    ++epoch_;
    auto in = [&](int t) { return mark_[t] == epoch_; };
    mark_[start] = epoch_;
    for (std::size_t i = 0; i < cavity.size(); ++i) {
      for (int o : tris_[cavity[i]].n) {
        if (o < 0 || in(o)) continue;
        const auto& v = tris_[o].v;
        if (incircle(v[0], v[1], v[2], p) > 0) {
          mark_[o] = epoch_;
          cavity.push_back(o);
        }
      }
    }
    // Grow until p sees every boundary edge from the inside (star-shaped).
    struct Boundary {
      std::uint32_t a, b;
      int outer;
    };
    std::vector<Boundary> boundary;
    for (bool grown = true; grown;) {
      grown = false;
      boundary.clear();
      for (int t : cavity) {
        for (int i = 0; i < 3; ++i) {
          const int o = tris_[t].n[i];
          if (o >= 0 && in(o)) continue;
          const std::uint32_t a = tris_[t].v[next(i)], b = tris_[t].v[prev(i)];
          if (orient(a, b, p) <= 0) {
            if (o < 0) fail("point outside triangulation");
            mark_[o] = epoch_;
            cavity.push_back(o);
            grown = true;
            break;
          }
          boundary.push_back({a, b, o});
        }
        if (grown) break;
      }
    }

    for (int t : cavity) tris_[t].alive = false;
    std::vector<int> made;
    made.reserve(boundary.size());
    for (const Boundary& e : boundary) {
      const int id = add_tri({p, e.a, e.b});
      tris_[id].n[0] = e.outer;
      if (e.outer >= 0) {
        for (int k = 0; k < 3; ++k) {
          const auto& ov = tris_[e.outer].v;
          if (ov[next(k)] == e.b && ov[prev(k)] == e.a) tris_[e.outer].n[k] = id;
        }
      }
      made.push_back(id);
    }
    for (int t : made) {
      for (int u : made) {
        if (tris_[u].v[1] == tris_[t].v[2]) tris_[t].n[1] = u;
        if (tris_[u].v[2] == tris_[t].v[1]) tris_[t].n[2] = u;
      }
    }
    last_ = made.back();
  }

  // Flips the edge opposite v[i] of triangle t.
  void flip(int t, int i) {
    const int u = tris_[t].n[i];
    const std::uint32_t p0 = tris_[t].v[i], p1 = tris_[t].v[next(i)], p2 = tris_[t].v[prev(i)];
    int j = 0;
    while (tris_[u].n[j] != t) ++j;
    const std::uint32_t q = tris_[u].v[j];
    const int t_a = tris_[t].n[next(i)];  // across (p2, p0)
    const int t_b = tris_[t].n[prev(i)];  // across (p0, p1)
    // In u = (q, p2, p1) rotated: across (p1, q) is opposite p2, across (q, p2) opposite p1.
    int jp2 = 0, jp1 = 0;
    for (int k = 0; k < 3; ++k) {
      if (tris_[u].v[k] == p2) jp2 = k;
      if (tris_[u].v[k] == p1) jp1 = k;
    }
    const int u_a = tris_[u].n[jp2];  // across (p1, q)
    const int u_b = tris_[u].n[jp1];  // across (q, p2)

    tris_[t].v = {p0, p1, q};
    tris_[t].n = {u_a, u, t_b};
    tris_[u].v = {q, p2, p0};
    tris_[u].n = {t_a, t, u_b};
    relink(t_a, t, u);
    relink(u_a, u, t);
    vert_tri_[p0] = t;
    vert_tri_[p1] = t;
    vert_tri_[q] = t;
    vert_tri_[p2] = u;
  }

  // Triangle containing the directed edge a -> b, and the index of the
  // vertex opposite it.
  std::pair<int, int> find_edge(std::uint32_t a, std::uint32_t b) const {
    const int start = vert_tri_[a];
    int t = start;
    do {
      const auto& tri = tris_[t];
      int i = 0;
      while (tri.v[i] != a) ++i;
      if (tri.v[next(i)] == b) return {t, prev(i)};
      t = tri.n[next(i)];
    } while (t >= 0 && t != start);
    return {-1, -1};
  }

  bool has_edge(std::uint32_t a, std::uint32_t b) const {
    return find_edge(a, b).first >= 0 || find_edge(b, a).first >= 0;
  }

  bool crosses(std::uint32_t a, std::uint32_t b, std::uint32_t x, std::uint32_t y) const {
    if (x == a || x == b || y == a || y == b) return false;
    const Real s1 = orient(a, b, x), s2 = orient(a, b, y);
    const Real s3 = orient(x, y, a), s4 = orient(x, y, b);
    return ((s1 > 0 && s2 < 0) || (s1 < 0 && s2 > 0)) && ((s3 > 0 && s4 < 0) || (s3 < 0 && s4 > 0));
  }

  void recover(std::uint32_t a, std::uint32_t b) {
    if (has_edge(a, b)) return;
    std::deque<Edge2> crossing;
    {
      // Find the wedge at a that the segment leaves through.
      const int start = vert_tri_[a];
      int t = start, found = -1;
      do {
        const auto& tri = tris_[t];
        int i = 0;
        while (tri.v[i] != a) ++i;
        const std::uint32_t v1 = tri.v[next(i)], v2 = tri.v[prev(i)];
        const Real o1 = orient(a, v1, b), o2 = orient(a, v2, b);
        if ((o1 == 0 && dot2(v1, a, b) > 0) || (o2 == 0 && dot2(v2, a, b) > 0))
          fail("vertex lies on a constraint edge");
        if (o1 > 0 && o2 < 0) {
          found = t;
          crossing.push_back({v2, v1});  // {left, right} of a -> b
          break;
        }
        t = tri.n[next(i)];
      } while (t >= 0 && t != start);
      if (found < 0) fail("constraint start wedge not found");
      // Walk across triangles until b is reached.
      std::uint32_t left = crossing.back()[0], right = crossing.back()[1];
      for (std::size_t guard = 0;; ++guard) {
        if (guard > tris_.size()) fail("constraint walk did not terminate");
        // The triangle beyond the current crossing edge holds it as left -> right.
        const auto [tt, k] = find_edge(left, right);
        if (tt < 0) fail("constraint walk left the mesh");
        const std::uint32_t w = tris_[tt].v[k];
        if (w == b) break;
        const Real o = orient(a, b, w);
        if (o == 0) fail("vertex lies on a constraint edge");
        if (o > 0) left = w;
        else right = w;
        crossing.push_back({left, right});
      }
    }

    std::vector<Edge2> created;
    std::size_t budget = 64 * (crossing.size() + 4) * (crossing.size() + 4);
    while (!crossing.empty()) {
      if (budget-- == 0) fail("constraint recovery did not converge");
      const Edge2 e = crossing.front();
      crossing.pop_front();
      if (constrained_.count(edge_key(e[0], e[1]))) fail("constraint edges intersect");
      auto [t, i] = find_edge(e[0], e[1]);
      if (t < 0) fail("lost crossing edge");
      const std::uint32_t p0 = tris_[t].v[i];
      const int u = tris_[t].n[i];
      int j = 0;
      while (tris_[u].n[j] != t) ++j;
      const std::uint32_t q = tris_[u].v[j];
      // Quad p0, e0, q, e1 must be strictly convex to flip.
      if (orient(p0, e[0], q) <= 0 || orient(q, e[1], p0) <= 0) {
        crossing.push_back(e);
        continue;
      }
      flip(t, i);
      if (crosses(a, b, p0, q)) crossing.push_back({p0, q});
      else created.push_back({p0, q});
    }
    if (!has_edge(a, b)) fail("constraint edge missing after recovery");
    restore_delaunay(created);
  }

  Real dot2(std::uint32_t v, std::uint32_t a, std::uint32_t b) const {
    // Positive when v projects strictly inside segment (a, b).
    const Real t = (Real(pts_[v].x) - pts_[a].x) * (Real(pts_[b].x) - pts_[a].x) +
                   (Real(pts_[v].y) - pts_[a].y) * (Real(pts_[b].y) - pts_[a].y);
    const Real len = (Real(pts_[b].x) - pts_[a].x) * (Real(pts_[b].x) - pts_[a].x) +
                     (Real(pts_[b].y) - pts_[a].y) * (Real(pts_[b].y) - pts_[a].y);
    return t > 0 && t < len ? 1 : -1;
  }

  void restore_delaunay(std::vector<Edge2> edges) {
    std::size_t budget = 32 * (edges.size() + 8) * (edges.size() + 8);
    while (!edges.empty() && budget-- > 0) {
      const Edge2 e = edges.back();
      edges.pop_back();
      if (constrained_.count(edge_key(e[0], e[1]))) continue;
      auto [t, i] = find_edge(e[0], e[1]);
      if (t < 0) continue;
      const int u = tris_[t].n[i];
      if (u < 0) continue;
      int j = 0;
      while (tris_[u].n[j] != t) ++j;
      const auto& v = tris_[t].v;
      const std::uint32_t q = tris_[u].v[j], p0 = v[i];
      if (incircle(v[0], v[1], v[2], q) <= 0) continue;
      if (orient(p0, e[0], q) <= 0 || orient(q, e[1], p0) <= 0) continue;
      flip(t, i);
      edges.push_back({p0, e[0]});
      edges.push_back({e[0], q});
      edges.push_back({q, e[1]});
      edges.push_back({e[1], p0});
    }
  }

  std::vector<Vec2> pts_;
  std::uint32_t super_ = 0;
  std::vector<Tri> tris_;
  std::vector<int> vert_tri_;
  std::unordered_set<std::uint64_t> constrained_;
  int last_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

std::vector<std::array<std::uint32_t, 3>> triangulate_region(std::span<const Vec2> points,
                                                             std::span<const Edge2> constraints) {
  if (points.size() < 3 || constraints.size() < 3) return {};
  Triangulation tr(points);
  tr.insert_all();
  tr.enforce(constraints);
  return tr.region();
}

}  // namespace hullcut::detail
