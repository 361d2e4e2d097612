#pragma once

// The equation system g = (h, a, f) of a triangulation. Monomial equations are
// stored as integer exponent rows with a sign; the per-vertex cross-ratio
// relations are the only rows depending on z.

#include <Eigen/Dense>
#include <algorithm>
#include <string>
#include <vector>

#include "decoration.hpp"
#include "triangulation.hpp"

namespace pgl3glue {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

enum class RowKind { HFace, HVertex, FEdgeForward, FEdgeReverse, FFace, AVertex };

inline const char* rowKindName(RowKind k) {
  switch (k) {
    case RowKind::HFace: return "h-face";
    case RowKind::HVertex: return "h-vertex";
    case RowKind::FEdgeForward: return "f-edge+";
    case RowKind::FEdgeReverse: return "f-edge-";
    case RowKind::FFace: return "f-face";
    default: return "a-vertex";
  }
}

/// sign * prod z_alpha^{exponents[alpha]} = 1
struct MonomialRow {
  RowKind kind;
  int sign = 1;
  std::vector<int> exponents;  // length 16 nu
  int tag = 0;                 // tet, edge class or gluing index depending on kind
  int sub = 0;                 // face / vertex label where relevant
};

/// z_{v,c2} (1 - z_{v,c1}) = 1
struct CrossRatioRow {
  int tet;
  int vertex;
};

/// Columns of F: each oriented edge class (forward, then reverse), then each
/// face gluing. Rows are the 16 nu coordinates.
inline Eigen::MatrixXi buildF(const Triangulation& t, const std::vector<EdgeClass>& edges) {
  const int n = kSlotsPerTet * t.nu();
  Eigen::MatrixXi F = Eigen::MatrixXi::Zero(n, 2 * static_cast<int>(edges.size()) +
                                                   static_cast<int>(t.gluings().size()));
  int col = 0;
  for (const auto& e : edges) {
    for (const auto& x : e.cycle) F(CoordIndex::edge(x.tet, x.i, x.j).global(), col) += 1;
    ++col;
    for (const auto& x : e.reversedCycle()) F(CoordIndex::edge(x.tet, x.i, x.j).global(), col) += 1;
    ++col;
  }
  for (const auto& g : t.gluings()) {
    F(CoordIndex::face(g.tet, g.face).global(), col) += 1;
    F(CoordIndex::face(g.toTet, g.toFace).global(), col) += 1;
    ++col;
  }
  return F;
}

class EquationSystem {
 public:
  explicit EquationSystem(const Triangulation& t) : nu_(t.nu()), edges_(edgeClasses(t)) {
    const int n = columns();
    for (int tet = 0; tet < nu_; ++tet) {
      for (int l = 1; l <= 4; ++l) {
        MonomialRow r{RowKind::HFace, -1, std::vector<int>(n, 0), tet, l};
        r.exponents[CoordIndex::face(tet, l).global()] = 1;
        for (int a : faceTriple(l)) r.exponents[CoordIndex::edge(tet, a, l).global()] = -1;
        h_.push_back(std::move(r));
      }
      for (int v = 1; v <= 4; ++v) {
        MonomialRow r{RowKind::HVertex, -1, std::vector<int>(n, 0), tet, v};
        for (int w = 1; w <= 4; ++w)
          if (w != v) r.exponents[CoordIndex::edge(tet, v, w).global()] = 1;
        h_.push_back(std::move(r));
      }
      for (int v = 1; v <= 4; ++v) a_.push_back({tet, v});
    }
    F_ = buildF(t, edges_);
    for (int c = 0; c < F_.cols(); ++c) {
      const int nEdgeCols = 2 * static_cast<int>(edges_.size());
      RowKind kind = c >= nEdgeCols ? RowKind::FFace
                                    : (c % 2 == 0 ? RowKind::FEdgeForward : RowKind::FEdgeReverse);
      MonomialRow r{kind, 1, std::vector<int>(n, 0), c < nEdgeCols ? c / 2 : c - nEdgeCols, 0};
      for (int k = 0; k < n; ++k) r.exponents[k] = F_(k, c);
      f_.push_back(std::move(r));
    }
  }

  int nu() const { return nu_; }
  int columns() const { return kSlotsPerTet * nu_; }
  int rows() const { return static_cast<int>(h_.size() + a_.size() + f_.size()); }

  const std::vector<MonomialRow>& hRows() const { return h_; }
  const std::vector<CrossRatioRow>& aRows() const { return a_; }
  const std::vector<MonomialRow>& fRows() const { return f_; }
  const std::vector<EdgeClass>& edges() const { return edges_; }
  const Eigen::MatrixXi& F() const { return F_; }

  /// Row offsets in the stacked order h, a, f.
  int aOffset() const { return static_cast<int>(h_.size()); }
  int fOffset() const { return static_cast<int>(h_.size() + a_.size()); }

  VectorXc residual(const Decoration& d) const {
    VectorXc r(rows());
    int k = 0;
    for (const auto& row : h_) r(k++) = evalMonomial(row, d) - 1.0;
    for (const auto& row : a_) r(k++) = crossRatioValue(row, d) - 1.0;
    for (const auto& row : f_) r(k++) = evalMonomial(row, d) - 1.0;
    return r;
  }

  /// Log-Jacobian: monomial rows carry their exponents; a-row (t,v) is
  /// xi_{v,c1} + z_{v,c3} xi_{v,c2}, the linearization valid where h = a = 1.
  MatrixXc jacobianLog(const Decoration& d, double consistencyTol = 1e-9) const {
    if (!isConsistent(d, consistencyTol)) throw InputError("inconsistent decoration");
    MatrixXc J = MatrixXc::Zero(rows(), columns());
    int k = 0;
    for (const auto& row : h_) fillExponents(J, k++, row);
    for (const auto& row : a_) {
      const auto f = vertexFrame(row.vertex);
      J(k, CoordIndex::edge(row.tet, row.vertex, f.c1).global()) = 1.0;
      J(k, CoordIndex::edge(row.tet, row.vertex, f.c2).global()) = d.edge(row.tet, row.vertex, f.c3);
      ++k;
    }
    for (const auto& row : f_) fillExponents(J, k++, row);
    return J;
  }

  /// Rows of the log-Jacobian belonging to the a-equations only.
  MatrixXc aBlock(const Decoration& d) const {
    return jacobianLog(d).middleRows(aOffset(), static_cast<Eigen::Index>(a_.size()));
  }

  static Complex evalMonomial(const std::vector<int>& exps, int sign, const Decoration& d) {
    Complex v = static_cast<double>(sign);
    for (std::size_t k = 0; k < exps.size(); ++k) {
      const int e = exps[k];
      if (e > 0)
        for (int p = 0; p < e; ++p) v *= d.z[k];
      else
        for (int p = 0; p < -e; ++p) v /= d.z[k];
    }
    return v;
  }
  static Complex evalMonomial(const MonomialRow& row, const Decoration& d) {
    return evalMonomial(row.exponents, row.sign, d);
  }

  static Complex crossRatioValue(const CrossRatioRow& row, const Decoration& d) {
    const auto f = vertexFrame(row.vertex);
    return d.edge(row.tet, row.vertex, f.c2) * (1.0 - d.edge(row.tet, row.vertex, f.c1));
  }

 private:
  static void fillExponents(MatrixXc& J, int k, const MonomialRow& row) {
    for (std::size_t c = 0; c < row.exponents.size(); ++c)
      if (row.exponents[c]) J(k, static_cast<Eigen::Index>(c)) = static_cast<double>(row.exponents[c]);
  }

  int nu_;
  std::vector<EdgeClass> edges_;
  std::vector<MonomialRow> h_;
  std::vector<CrossRatioRow> a_;
  std::vector<MonomialRow> f_;
  Eigen::MatrixXi F_;
};

/// Expands face coordinates through z_{ijk} = -z_{il} z_{jl} z_{kl}, giving an
/// exponent vector on edge coordinates plus the accumulated sign.
inline std::pair<std::vector<int>, int> expandFaces(const std::vector<int>& exps) {
  std::vector<int> out = exps;
  int sign = 1;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    const auto idx = CoordIndex::fromGlobal(static_cast<int>(k));
    if (!idx.isFace() || exps[k] == 0) continue;
    const int l = slotInfo(idx.slot).i;
    out[k] = 0;
    for (int a : faceTriple(l)) out[CoordIndex::edge(idx.tet, a, l).global()] += exps[k];
    if (exps[k] % 2 != 0) sign = -sign;
  }
  return {out, sign};
}

/// Text form of a monomial equation in canonical coordinate order, faces
/// expanded into edges: "z23*z34*z41*w23*w34*w41 = 1". Negative powers go to a
/// denominator, repeated factors are written out.
inline std::string renderMonomial(const std::vector<int>& exps, int sign, int nu) {
  auto [e, s] = expandFaces(exps);
  s *= sign;
  std::string num, den;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const std::string name = CoordIndex::fromGlobal(static_cast<int>(k)).name(nu);
    for (int p = 0; p < std::abs(e[k]); ++p) {
      std::string& target = e[k] > 0 ? num : den;
      if (!target.empty()) target += "*";
      target += name;
    }
  }
  if (num.empty()) num = "1";
  std::string lhs = den.empty() ? num : num + "/(" + den + ")";
  return (s < 0 ? "-" : "") + lhs + " = 1";
}

inline std::string renderRow(const MonomialRow& row, int nu) {
  return renderMonomial(row.exponents, row.sign, nu);
}

inline std::string renderCrossRatio(const CrossRatioRow& row, int nu) {
  const auto f = vertexFrame(row.vertex);
  const std::string c1 = CoordIndex::edge(row.tet, row.vertex, f.c1).name(nu);
  const std::string c2 = CoordIndex::edge(row.tet, row.vertex, f.c2).name(nu);
  return c2 + "*(1-" + c1 + ") = 1";
}

}  // namespace pgl3glue
