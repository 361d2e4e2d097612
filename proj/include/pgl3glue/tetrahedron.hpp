#pragma once

// Local combinatorics of a positively ordered tetrahedron (1,2,3,4): vertex
// cyclic orders, the 16 coordinate slots, face triples, and 4-element
// permutations used for face gluings. Vertex labels are 1..4 everywhere.

#include <array>
#include <cassert>
#include <cstdint>
#include <string>

namespace pgl3glue {

constexpr int kEdgeSlots = 12;
constexpr int kSlotsPerTet = 16;

/// Cyclic order of the three other vertices around vertex v, as seen from the
/// cusp with the boundary-induced orientation. At 1: 2->3->4, at 2: 1->4->3,
/// at 3: 1->2->4, at 4: 1->3->2.
inline int cyclicNext(int v, int w) {
  static constexpr int kNext[4][5] = {
      {0, 0, 3, 4, 2},  // v = 1
      {0, 4, 0, 1, 3},  // v = 2
      {0, 2, 4, 0, 1},  // v = 3
      {0, 3, 1, 2, 0},  // v = 4
  };
  assert(v >= 1 && v <= 4 && w >= 1 && w <= 4 && v != w);
  return kNext[v - 1][w];
}

/// Representative neighbour of each vertex: the reduced unknown at v is z_{v,rep(v)}.
inline int representative(int v) {
  static constexpr int kRep[5] = {0, 2, 1, 4, 3};
  return kRep[v];
}

/// (c1, c2, c3): the other vertices around v, starting at rep(v), in cyclic order.
struct VertexFrame {
  int c1, c2, c3;
};

inline VertexFrame vertexFrame(int v) {
  const int c1 = representative(v);
  const int c2 = cyclicNext(v, c1);
  return {c1, c2, cyclicNext(v, c2)};
}

/// Canonical vertex triple of the face opposite l: (1,2,3), (1,3,4), (1,4,2), (3,2,4).
inline std::array<int, 3> faceTriple(int l) {
  switch (l) {
    case 1: return {3, 2, 4};
    case 2: return {1, 3, 4};
    case 3: return {1, 4, 2};
    default: return {1, 2, 3};
  }
}

/// Slot of edge coordinate z_{ij} inside a tetrahedron (lexicographic over i != j).
inline int edgeSlot(int i, int j) {
  assert(i != j);
  return 3 * (i - 1) + (j < i ? j - 1 : j - 2);
}

/// Slot of the face coordinate of the face opposite l.
inline int faceSlot(int l) { return kEdgeSlots + l - 1; }

struct SlotInfo {
  bool isFace;
  int i, j;  // edge (i,j); for faces i = opposite vertex, j = 0
};

inline SlotInfo slotInfo(int slot) {
  if (slot >= kEdgeSlots) return {true, slot - kEdgeSlots + 1, 0};
  const int i = slot / 3 + 1;
  int j = slot % 3 + 1;
  if (j >= i) ++j;
  return {false, i, j};
}

/// The two vertices other than a and b, in increasing order.
inline std::array<int, 2> otherTwo(int a, int b) {
  std::array<int, 2> out{};
  int k = 0;
  for (int v = 1; v <= 4; ++v)
    if (v != a && v != b) out[k++] = v;
  return out;
}

/// The vertex not in {a, b, c}.
inline int remainingVertex(int a, int b, int c) { return 10 - a - b - c; }

/// Bijection of {1,2,3,4}.
class Perm4 {
 public:
  constexpr Perm4() : img_{1, 2, 3, 4} {}
  explicit constexpr Perm4(std::array<std::int8_t, 4> images) : img_(images) {}

  int operator()(int v) const { return img_[v - 1]; }

  Perm4 inverse() const {
    std::array<std::int8_t, 4> inv{};
    for (int v = 1; v <= 4; ++v) inv[img_[v - 1] - 1] = static_cast<std::int8_t>(v);
    return Perm4(inv);
  }

  bool isOdd() const {
    int inversions = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        if (img_[a] > img_[b]) ++inversions;
    return inversions % 2 == 1;
  }

  bool isBijection() const {
    int seen = 0;
    for (auto v : img_) {
      if (v < 1 || v > 4) return false;
      seen |= 1 << v;
    }
    return seen == 0b11110;
  }

  friend bool operator==(const Perm4&, const Perm4&) = default;

 private:
  std::array<std::int8_t, 4> img_;
};

/// Letter naming of tetrahedra in text renderings: z and w for up to two
/// tetrahedra (the usual notation), t1_, t2_, ... otherwise.
inline std::string tetName(int tet, int nu) {
  if (nu <= 2) return tet == 0 ? "z" : "w";
  return "t" + std::to_string(tet + 1) + "_";
}

}  // namespace pgl3glue
