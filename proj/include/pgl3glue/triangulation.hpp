#pragma once

// Ideal triangulations: face gluings, validation, oriented edge classes and
// cusp cross-sections (vertex links).

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "tetrahedron.hpp"

namespace pgl3glue {

/// One face matching. Tetrahedra are 0-based here; files use 1-based indices.
/// `vertexMap` is the full permutation of {1,2,3,4}: it sends the vertices of
/// face `face` to those of `toFace` and `face` itself to `toFace`.
struct FaceGluing {
  int tet = 0;
  int face = 1;
  int toTet = 0;
  int toFace = 1;
  Perm4 vertexMap;

  FaceGluing inverse() const { return {toTet, toFace, tet, face, vertexMap.inverse()}; }
};

struct OrientedEdge {
  int tet = 0;
  int i = 1, j = 2;

  OrientedEdge reversed() const { return {tet, j, i}; }
  friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

/// An edge of K: the cycle of (tet, oriented edge) incidences met when turning
/// around it. The reverse orientation is `reversedCycle()`.
struct EdgeClass {
  OrientedEdge representative;
  std::vector<OrientedEdge> cycle;

  int valence() const { return static_cast<int>(cycle.size()); }
  std::vector<OrientedEdge> reversedCycle() const {
    std::vector<OrientedEdge> out;
    out.reserve(cycle.size());
    for (const auto& e : cycle) out.push_back(e.reversed());
    return out;
  }
};

/// Triangle of a cusp cross-section: the link of `vertex` in tetrahedron `tet`.
/// Its corners are labelled by the other three vertices w (corner (vertex, w)
/// carries z_{vertex,w}); its sides by the tet vertex c whose opposite face
/// contains the side.
struct LinkTriangle {
  int tet = 0;
  int vertex = 1;
  friend auto operator<=>(const LinkTriangle&, const LinkTriangle&) = default;
};

/// A side of a link triangle, addressed by (local triangle index, side label c).
struct LinkSide {
  int triangle = 0;
  int side = 1;
  friend auto operator<=>(const LinkSide&, const LinkSide&) = default;
};

/// Closed triangulated surface cut out of K around one ideal vertex.
struct CuspSurface {
  int index = 0;
  std::vector<LinkTriangle> triangles;
  /// across[k][c]: side reached by crossing side c of triangle k (c = 1..4,
  /// entry at the triangle's own vertex unused).
  std::vector<std::array<LinkSide, 5>> across;
  /// corner relabelling when crossing side c of triangle k.
  std::vector<std::array<Perm4, 5>> acrossMap;
  /// +1 where the corner order given by cyclicNext agrees with a fixed
  /// orientation of the surface, -1 otherwise.
  std::vector<int> orientation;
  int vertexCount = 0;
  int eulerCharacteristic = 0;

  int localIndex(LinkTriangle t) const {
    auto it = std::find(triangles.begin(), triangles.end(), t);
    return it == triangles.end() ? -1 : static_cast<int>(it - triangles.begin());
  }
};

class Triangulation {
 public:
  Triangulation() = default;

  /// Checks that every face of every tetrahedron is matched exactly once and
  /// that each record is a bijection between the two faces. Orientation and
  /// topology are checked by `validate()`.
  static Triangulation fromGluings(std::string name, int nu, std::vector<FaceGluing> gluings) {
    if (nu <= 0) throw InputError("tetrahedron count must be positive");
    Triangulation t;
    t.name_ = std::move(name);
    t.nu_ = nu;
    t.gluings_ = std::move(gluings);
    t.table_.assign(static_cast<std::size_t>(nu) * 4, std::nullopt);
    for (const auto& g : t.gluings_) {
      if (g.tet < 0 || g.tet >= nu || g.toTet < 0 || g.toTet >= nu)
        throw InputError("gluing references tetrahedron out of range");
      if (g.face < 1 || g.face > 4 || g.toFace < 1 || g.toFace > 4)
        throw InputError("face label out of range");
      if (!g.vertexMap.isBijection() || g.vertexMap(g.face) != g.toFace)
        throw InputError("vertex_map is not a bijection between the glued faces");
      if (g.tet == g.toTet && g.face == g.toFace) throw InputError("face glued to itself");
      for (const auto& side : {g, g.inverse()}) {
        auto& slot = t.table_[static_cast<std::size_t>(side.tet) * 4 + side.face - 1];
        if (slot) throw InputError("face multiply matched");
        slot = side;
      }
    }
    for (int tet = 0; tet < nu; ++tet)
      for (int f = 1; f <= 4; ++f)
        if (!t.table_[static_cast<std::size_t>(tet) * 4 + f - 1])
          throw InputError("unmatched face: tet " + std::to_string(tet + 1) + " face " +
                           std::to_string(f));
    return t;
  }

  /// Orientation, edge and cusp checks. Throws InputError on the first violation.
  void validate() const;

  const std::string& name() const { return name_; }
  int nu() const { return nu_; }
  const std::vector<FaceGluing>& gluings() const { return gluings_; }

  /// The gluing leaving face `face` of `tet` (either stored direction).
  const FaceGluing& glue(int tet, int face) const {
    return *table_[static_cast<std::size_t>(tet) * 4 + face - 1];
  }

 private:
  std::string name_;
  int nu_ = 0;
  std::vector<FaceGluing> gluings_;
  std::vector<std::optional<FaceGluing>> table_;
};

/// Oriented edge cycle starting at (tet,i,j), first crossing the face opposite
/// the smaller of the two remaining vertices.
inline std::vector<OrientedEdge> edgeCycle(const Triangulation& t, OrientedEdge start) {
  struct State {
    OrientedEdge e;
    int crossFace;
    bool operator==(const State&) const = default;
  };
  const State first{start, otherTwo(start.i, start.j)[0]};
  State cur = first;
  std::vector<OrientedEdge> out;
  const std::size_t limit = static_cast<std::size_t>(t.nu()) * 12 + 1;
  do {
    out.push_back(cur.e);
    const int other = remainingVertex(cur.e.i, cur.e.j, cur.crossFace);
    const FaceGluing& g = t.glue(cur.e.tet, cur.crossFace);
    const Perm4& m = g.vertexMap;
    cur = State{{g.toTet, m(cur.e.i), m(cur.e.j)}, m(other)};
    if (out.size() > limit) throw InputError("edge cycle does not close");
  } while (!(cur == first));
  return out;
}

/// Edge classes of K, one per unoriented edge. Representatives are the first
/// unvisited (tet, i<j) in lexicographic order.
inline std::vector<EdgeClass> edgeClasses(const Triangulation& t) {
  std::set<OrientedEdge> seen;
  std::vector<EdgeClass> out;
  for (int tet = 0; tet < t.nu(); ++tet)
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        OrientedEdge e{tet, i, j};
        if (seen.count(e)) continue;
        EdgeClass cls{e, edgeCycle(t, e)};
        for (const auto& x : cls.cycle) {
          if (seen.count(x.reversed()) || x.reversed() == e)
            throw InputError("edge identified with its reverse");
          seen.insert(x);
        }
        for (const auto& x : cls.cycle) seen.insert(x.reversed());
        out.push_back(std::move(cls));
      }
  return out;
}

namespace detail {

inline int findRoot(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

/// Assembles the 4*nu vertex-link triangles into closed surfaces and checks
/// each is an orientable surface of Euler characteristic 0.
inline std::vector<CuspSurface> cuspLinks(const Triangulation& t) {
  const int n = 4 * t.nu();
  auto id = [](int tet, int v) { return 4 * tet + v - 1; };
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int tet = 0; tet < t.nu(); ++tet)
    for (int v = 1; v <= 4; ++v)
      for (int c = 1; c <= 4; ++c) {
        if (c == v) continue;
        const auto& g = t.glue(tet, c);
        int a = detail::findRoot(parent, id(tet, v));
        int b = detail::findRoot(parent, id(g.toTet, g.vertexMap(v)));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  std::map<int, int> componentOf;
  std::vector<CuspSurface> cusps;
  for (int k = 0; k < n; ++k) {
    int r = detail::findRoot(parent, k);
    if (!componentOf.count(r)) {
      componentOf[r] = static_cast<int>(cusps.size());
      cusps.emplace_back();
      cusps.back().index = static_cast<int>(cusps.size()) - 1;
    }
    cusps[componentOf[r]].triangles.push_back({k / 4, k % 4 + 1});
  }

  for (auto& cusp : cusps) {
    const int m = static_cast<int>(cusp.triangles.size());
    cusp.across.assign(m, {});
    cusp.acrossMap.assign(m, {});
    for (int k = 0; k < m; ++k) {
      const auto [tet, v] = cusp.triangles[k];
      for (int c = 1; c <= 4; ++c) {
        if (c == v) continue;
        const auto& g = t.glue(tet, c);
        cusp.across[k][c] = {cusp.localIndex({g.toTet, g.vertexMap(v)}), g.toFace};
        cusp.acrossMap[k][c] = g.vertexMap;
      }
    }

    // Link vertices: corners (k, w) identified across the sides containing them.
    std::vector<int> cp(static_cast<std::size_t>(m) * 5);
    std::iota(cp.begin(), cp.end(), 0);
    for (int k = 0; k < m; ++k) {
      const int v = cusp.triangles[k].vertex;
      for (int c = 1; c <= 4; ++c) {
        if (c == v) continue;
        const auto [k2, c2] = cusp.across[k][c];
        for (int w = 1; w <= 4; ++w) {
          if (w == v || w == c) continue;
          int a = detail::findRoot(cp, 5 * k + w);
          int b = detail::findRoot(cp, 5 * k2 + cusp.acrossMap[k][c](w));
          if (a != b) cp[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    std::set<int> roots;
    for (int k = 0; k < m; ++k)
      for (int w = 1; w <= 4; ++w)
        if (w != cusp.triangles[k].vertex) roots.insert(detail::findRoot(cp, 5 * k + w));
    cusp.vertexCount = static_cast<int>(roots.size());
    cusp.eulerCharacteristic = cusp.vertexCount - 3 * m / 2 + m;

    // Orientability by propagation: crossing a side must carry the corner cyclic
    // order of one triangle to the reversed order of its neighbour, relative to
    // the assigned signs.
    std::vector<int> sign(m, 0);
    sign[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      const int v = cusp.triangles[k].vertex;
      for (int c = 1; c <= 4; ++c) {
        if (c == v) continue;
        const auto [k2, c2] = cusp.across[k][c];
        const Perm4& map = cusp.acrossMap[k][c];
        const auto ab = otherTwo(v, c);
        // Side direction a->b is "positive" in triangle k if b follows a cyclically.
        const bool posHere = cyclicNext(v, ab[0]) == ab[1];
        const int v2 = cusp.triangles[k2].vertex;
        const bool posThere = cyclicNext(v2, map(ab[0])) == map(ab[1]);
        const int required = (posHere != posThere) ? sign[k] : -sign[k];
        if (sign[k2] == 0) {
          sign[k2] = required;
          stack.push_back(k2);
        } else if (sign[k2] != required) {
          throw InputError("non-torus cusp link: non-orientable component");
        }
      }
    }
    cusp.orientation = sign;
    if (cusp.eulerCharacteristic != 0)
      throw InputError("non-torus cusp link: Euler characteristic " +
                       std::to_string(cusp.eulerCharacteristic));
  }
  return cusps;
}

inline void Triangulation::validate() const {
  for (const auto& g : gluings_)
    if (!g.vertexMap.isOdd())
      throw InputError("orientation-preserving gluing at tet " + std::to_string(g.tet + 1) +
                       " face " + std::to_string(g.face));
  const auto edges = edgeClasses(*this);
  (void)cuspLinks(*this);
  if (static_cast<int>(edges.size()) != nu_)
    throw InputError("edge-count mismatch: " + std::to_string(edges.size()) +
                     " edge classes for " + std::to_string(nu_) + " tetrahedra");
}

}  // namespace pgl3glue
