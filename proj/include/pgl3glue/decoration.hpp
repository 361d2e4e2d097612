#pragma once

// Coordinates of decorated tetrahedra: 12 edge and 4 face cross-ratios per
// tetrahedron, the internal relations between them, and the reduced
// parametrization by one unknown per vertex.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "tetrahedron.hpp"

namespace pgl3glue {

using Complex = std::complex<double>;

/// Global coordinate index: 16 * tet + slot.
struct CoordIndex {
  int tet = 0;
  int slot = 0;

  static CoordIndex edge(int tet, int i, int j) { return {tet, edgeSlot(i, j)}; }
  static CoordIndex face(int tet, int l) { return {tet, faceSlot(l)}; }
  static CoordIndex fromGlobal(int g) { return {g / kSlotsPerTet, g % kSlotsPerTet}; }

  int global() const { return kSlotsPerTet * tet + slot; }
  bool isFace() const { return slot >= kEdgeSlots; }

  /// "z12", "w43", "z[123]" for faces (canonical triple of the face).
  std::string name(int nu) const {
    const SlotInfo s = slotInfo(slot);
    if (!s.isFace) return tetName(tet, nu) + std::to_string(s.i) + std::to_string(s.j);
    const auto t = faceTriple(s.i);
    return tetName(tet, nu) + "[" + std::to_string(t[0]) + std::to_string(t[1]) +
           std::to_string(t[2]) + "]";
  }
  friend auto operator<=>(const CoordIndex&, const CoordIndex&) = default;
};

struct Decoration {
  int nu = 0;
  std::vector<Complex> z;  // size 16 * nu

  Decoration() = default;
  explicit Decoration(int n) : nu(n), z(static_cast<std::size_t>(kSlotsPerTet) * n) {}

  Complex& edge(int tet, int i, int j) { return z[CoordIndex::edge(tet, i, j).global()]; }
  Complex edge(int tet, int i, int j) const { return z[CoordIndex::edge(tet, i, j).global()]; }
  Complex& face(int tet, int l) { return z[CoordIndex::face(tet, l).global()]; }
  Complex face(int tet, int l) const { return z[CoordIndex::face(tet, l).global()]; }

  Decoration conj() const {
    Decoration out = *this;
    for (auto& v : out.z) v = std::conj(v);
    return out;
  }
};

/// One unknown per (tet, vertex): x[4 * tet + v - 1] = z_{v, rep(v)}.
struct ReducedPoint {
  int nu = 0;
  std::vector<Complex> x;

  ReducedPoint() = default;
  explicit ReducedPoint(int n) : nu(n), x(static_cast<std::size_t>(4) * n) {}
  ReducedPoint(int n, std::vector<Complex> values) : nu(n), x(std::move(values)) {
    if (static_cast<int>(x.size()) != 4 * n) throw InputError("reduced point needs 4 values per tetrahedron");
  }

  Complex& at(int tet, int v) { return x[4 * tet + v - 1]; }
  Complex at(int tet, int v) const { return x[4 * tet + v - 1]; }

  ReducedPoint conj() const {
    ReducedPoint out = *this;
    for (auto& v : out.x) v = std::conj(v);
    return out;
  }
};

constexpr double kDegeneracyGuard = 1e-10;

inline bool nearDegenerate(Complex v, double guard) {
  return std::abs(v) <= guard || std::abs(v - 1.0) <= guard || !std::isfinite(v.real()) ||
         !std::isfinite(v.imag());
}

/// The three edge values at a vertex, in frame order (c1, c2, c3).
inline std::array<Complex, 3> vertexEdgeValues(Complex x) {
  return {x, 1.0 / (1.0 - x), 1.0 - 1.0 / x};
}

inline Decoration expandReduced(const ReducedPoint& r, double guard = kDegeneracyGuard) {
  Decoration d(r.nu);
  for (int t = 0; t < r.nu; ++t) {
    for (int v = 1; v <= 4; ++v) {
      const Complex x = r.at(t, v);
      if (nearDegenerate(x, guard))
        throw InputError("degenerate coordinate at tet " + std::to_string(t + 1) + " vertex " +
                         std::to_string(v));
      const auto f = vertexFrame(v);
      const auto vals = vertexEdgeValues(x);
      d.edge(t, v, f.c1) = vals[0];
      d.edge(t, v, f.c2) = vals[1];
      d.edge(t, v, f.c3) = vals[2];
      for (const auto& val : vals)
        if (nearDegenerate(val, guard))
          throw InputError("degenerate coordinate at tet " + std::to_string(t + 1) + " vertex " +
                           std::to_string(v));
    }
    for (int l = 1; l <= 4; ++l) {
      const auto [a, b, c] = faceTriple(l);
      d.face(t, l) = -d.edge(t, a, l) * d.edge(t, b, l) * d.edge(t, c, l);
    }
  }
  return d;
}

/// Largest violation of the face, vertex-frame and vertex-product relations.
struct RelationResiduals {
  double rel1 = 0;  // z_{ijk} + z_{il} z_{jl} z_{kl}
  double rel2 = 0;  // z_{v,c2} (1 - z_{v,c1}) - 1, over all three rotations
  double rel3 = 0;  // z_{ij} z_{ik} z_{il} + 1

  double max() const { return std::max({rel1, rel2, rel3}); }
};

inline RelationResiduals relationResiduals(const Decoration& d) {
  RelationResiduals out;
  for (int t = 0; t < d.nu; ++t) {
    for (int l = 1; l <= 4; ++l) {
      const auto [a, b, c] = faceTriple(l);
      out.rel1 = std::max(out.rel1, std::abs(d.face(t, l) + d.edge(t, a, l) * d.edge(t, b, l) *
                                                                 d.edge(t, c, l)));
    }
    for (int v = 1; v <= 4; ++v) {
      const auto f = vertexFrame(v);
      const int cs[3] = {f.c1, f.c2, f.c3};
      for (int k = 0; k < 3; ++k) {
        const Complex a = d.edge(t, v, cs[k]);
        const Complex b = d.edge(t, v, cs[(k + 1) % 3]);
        out.rel2 = std::max(out.rel2, std::abs(b * (1.0 - a) - 1.0));
      }
      out.rel3 = std::max(out.rel3,
                          std::abs(d.edge(t, v, f.c1) * d.edge(t, v, f.c2) * d.edge(t, v, f.c3) + 1.0));
    }
  }
  return out;
}

inline bool isConsistent(const Decoration& d, double tol = 1e-9) {
  return relationResiduals(d).max() <= tol;
}

inline ReducedPoint reduce(const Decoration& d, double tol = 1e-9) {
  if (!isConsistent(d, tol)) throw InputError("inconsistent decoration");
  ReducedPoint r(d.nu);
  for (int t = 0; t < d.nu; ++t)
    for (int v = 1; v <= 4; ++v) r.at(t, v) = d.edge(t, v, representative(v));
  return r;
}

/// Every edge coordinate has strictly positive imaginary part.
inline bool isPositive(const Decoration& d) {
  for (int t = 0; t < d.nu; ++t)
    for (int s = 0; s < kEdgeSlots; ++s)
      if (!(d.z[kSlotsPerTet * t + s].imag() > 0)) return false;
  return true;
}

}  // namespace pgl3glue
