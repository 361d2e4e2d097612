#pragma once

// Peripheral curves on the cusp tori, drawn as paths through link triangles,
// and the eigenvalue words they define.

#include <Eigen/Core>
#include <algorithm>
#include <complex>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "decoration.hpp"
#include "triangulation.hpp"

namespace pgl3glue {

enum class Side { Left, Right };

/// Passage of a path through the link triangle of `vertex` in `tet`, cutting
/// off the corner (vertex, corner).
struct CornerStep {
  int tet = 0;
  int vertex = 1;
  int corner = 2;
  Side side = Side::Left;
  friend bool operator==(const CornerStep&, const CornerStep&) = default;
};

/// Sides crossed by a corner step, labelled by the opposite tet vertex.
struct StepSides {
  int entry;
  int exit;
};

inline StepSides stepSides(const CornerStep& s) {
  const int next = cyclicNext(s.vertex, s.corner);
  const int exit = s.side == Side::Left ? next : cyclicNext(s.vertex, next);
  return {remainingVertex(s.vertex, s.corner, exit), exit};
}

/// The step through (tet, vertex) entering at `entry` and leaving at `exit`.
inline CornerStep stepFromSides(int tet, int vertex, int entry, int exit) {
  const int corner = remainingVertex(vertex, entry, exit);
  const Side side = cyclicNext(vertex, corner) == exit ? Side::Left : Side::Right;
  return {tet, vertex, corner, side};
}

/// Laurent exponents of the two eigenvalue words of a closed path, on the
/// 16 nu coordinates (edge coordinates only).
struct HolonomyWord {
  std::vector<int> A;
  std::vector<int> Astar;
};

using CornerPath = std::vector<CornerStep>;

inline void checkClosed(const Triangulation& t, const CornerPath& path) {
  if (path.empty()) return;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const CornerStep& s = path[k];
    const CornerStep& n = path[(k + 1) % path.size()];
    const auto& g = t.glue(s.tet, stepSides(s).exit);
    if (g.toTet != n.tet || g.vertexMap(s.vertex) != n.vertex || g.toFace != stepSides(n).entry)
      throw InputError("open path");
  }
}

/// Left corner (i,j): A gets z_ij, A* gets 1/z_ji. Right corner (i,j): A gets
/// 1/z_ij, A* gets z_kl z_lk / z_ij with {k,l} the remaining vertices.
inline HolonomyWord wordFromPath(const Triangulation& t, const CornerPath& path) {
  checkClosed(t, path);
  const int n = kSlotsPerTet * t.nu();
  HolonomyWord w{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  for (const auto& s : path) {
    const int i = s.vertex, j = s.corner;
    if (s.side == Side::Left) {
      w.A[CoordIndex::edge(s.tet, i, j).global()] += 1;
      w.Astar[CoordIndex::edge(s.tet, j, i).global()] -= 1;
    } else {
      const auto kl = otherTwo(i, j);
      w.A[CoordIndex::edge(s.tet, i, j).global()] -= 1;
      w.Astar[CoordIndex::edge(s.tet, i, j).global()] -= 1;
      w.Astar[CoordIndex::edge(s.tet, kl[0], kl[1]).global()] += 1;
      w.Astar[CoordIndex::edge(s.tet, kl[1], kl[0]).global()] += 1;
    }
  }
  return w;
}

inline CornerPath reversedPath(const CornerPath& path) {
  CornerPath out;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const auto sides = stepSides(*it);
    out.push_back(stepFromSides(it->tet, it->vertex, sides.exit, sides.entry));
  }
  return out;
}

namespace detail {

/// Dual-graph traversal step inside one cusp: local triangle plus sides.
struct DualStep {
  int triangle;
  int entry;
  int exit;
};

inline std::vector<DualStep> toDual(const CuspSurface& c, const CornerPath& path) {
  std::vector<DualStep> out;
  for (const auto& s : path) {
    const int k = c.localIndex({s.tet, s.vertex});
    if (k < 0) throw InputError("path leaves the cusp");
    const auto sides = stepSides(s);
    out.push_back({k, sides.entry, sides.exit});
  }
  return out;
}

inline CornerPath fromDual(const CuspSurface& c, const std::vector<DualStep>& steps) {
  CornerPath out;
  for (const auto& s : steps) {
    const auto tri = c.triangles[s.triangle];
    out.push_back(stepFromSides(tri.tet, tri.vertex, s.entry, s.exit));
  }
  return out;
}

/// The two corners of side c in triangle (vertex v), ordered so that the
/// second follows the first in the surface orientation.
inline std::array<int, 2> orientedSide(const CuspSurface& cusp, int k, int c) {
  const int v = cusp.triangles[k].vertex;
  auto ab = otherTwo(v, c);
  if (cyclicNext(v, ab[0]) != ab[1]) std::swap(ab[0], ab[1]);
  if (cusp.orientation[k] < 0) std::swap(ab[0], ab[1]);
  return ab;
}

}  // namespace detail

/// Algebraic intersection number of two closed paths on a cusp torus. The
/// second path is pushed onto the link edges first.
inline int intersectionNumber(const CuspSurface& cusp, const CornerPath& alpha, const CornerPath& beta) {
  const auto a = detail::toDual(cusp, alpha);
  const auto b = detail::toDual(cusp, beta);
  // Link-edge traversals of beta: (triangle, side, from-corner, to-corner).
  struct Traversal {
    int k, side, from, to;
  };
  std::vector<Traversal> pushed;
  for (std::size_t idx = 0; idx < b.size(); ++idx) {
    const auto& s = b[idx];
    const auto& n = b[(idx + 1) % b.size()];
    const int v = cusp.triangles[s.triangle].vertex;
    const int w = remainingVertex(v, s.entry, s.exit);
    const int v2 = cusp.triangles[n.triangle].vertex;
    const int w2 = remainingVertex(v2, n.entry, n.exit);
    const Perm4& m = cusp.acrossMap[s.triangle][s.exit];
    if (m(w) == w2) continue;
    pushed.push_back({s.triangle, s.exit, w, m.inverse()(w2)});
  }
  int total = 0;
  for (const auto& s : a) {
    const auto ori = detail::orientedSide(cusp, s.triangle, s.exit);
    const auto other = cusp.across[s.triangle][s.exit];
    for (const auto& p : pushed) {
      int from = p.from, to = p.to;
      if (p.k == s.triangle && p.side == s.exit) {
        // same half-edge
      } else if (p.k == other.triangle && p.side == other.side) {
        const Perm4 back = cusp.acrossMap[s.triangle][s.exit].inverse();
        from = back(from);
        to = back(to);
      } else {
        continue;
      }
      total += (from == ori[0] && to == ori[1]) ? 1 : -1;
    }
  }
  return total;
}

/// One cusp with a symplectic basis (a, b), a . b = +1, and its words.
struct CuspSystem {
  int cusp = 0;
  CornerPath a, b;
  HolonomyWord wordA, wordB;
};

namespace detail {

/// Shortest closed dual path through the glued side pair leaving triangle k
/// through side c, found by breadth-first search that avoids that pair.
inline std::optional<std::vector<DualStep>> shortestCycleThrough(const CuspSurface& cusp, int k, int c) {
  const auto [k2, c2] = cusp.across[k][c];
  const int m = static_cast<int>(cusp.triangles.size());
  // state: (triangle, entry side); predecessor records.
  struct Pred {
    int tri = -1, entry = -1;
    bool seen = false;
  };
  std::vector<std::array<Pred, 5>> pred(m);
  std::deque<std::pair<int, int>> queue;
  pred[k2][c2].seen = true;
  queue.push_back({k2, c2});
  auto banned = [&](int tri, int side) {
    return (tri == k && side == c) || (tri == k2 && side == c2);
  };
  while (!queue.empty()) {
    const auto [tri, entry] = queue.front();
    queue.pop_front();
    const int v = cusp.triangles[tri].vertex;
    for (int out = 1; out <= 4; ++out) {
      if (out == v || out == entry || banned(tri, out)) continue;
      const auto [nt, ns] = cusp.across[tri][out];
      if (nt == k && ns != c) {
        // Close the cycle: walk predecessors back to the start.
        std::vector<DualStep> rev{{nt, ns, c}, {tri, entry, out}};
        int ct = tri, ce = entry;
        while (!(ct == k2 && ce == c2)) {
          const Pred p = pred[ct][ce];
          const auto [pt, pe] = std::pair{p.tri, p.entry};
          // exit side from pt into ct is the side glued to ce
          int pexit = -1;
          for (int s = 1; s <= 4; ++s)
            if (s != cusp.triangles[pt].vertex && cusp.across[pt][s].triangle == ct &&
                cusp.across[pt][s].side == ce)
              pexit = s;
          rev.push_back({pt, pe, pexit});
          ct = pt;
          ce = pe;
        }
        std::vector<DualStep> out{rev[0]};
        for (auto it = rev.rbegin(); it != rev.rend() - 1; ++it) out.push_back(*it);
        return out;
      }
      if (nt == k) continue;
      if (!pred[nt][ns].seen) {
        pred[nt][ns] = {tri, entry, true};
        queue.push_back({nt, ns});
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Candidate closed paths: one shortest cycle through each glued side pair,
/// in the order (triangle, side) of the pair's first occurrence, stable-sorted
/// by length.
inline std::vector<CornerPath> candidateCycles(const CuspSurface& cusp) {
  std::vector<CornerPath> out;
  const int m = static_cast<int>(cusp.triangles.size());
  for (int k = 0; k < m; ++k)
    for (int c = 1; c <= 4; ++c) {
      if (c == cusp.triangles[k].vertex) continue;
      const auto other = cusp.across[k][c];
      if (std::pair{other.triangle, other.side} < std::pair{k, c}) continue;
      if (auto cyc = detail::shortestCycleThrough(cusp, k, c)) {
        auto path = detail::fromDual(cusp, *cyc);
        if (std::find(out.begin(), out.end(), path) == out.end()) out.push_back(std::move(path));
      }
    }
  std::stable_sort(out.begin(), out.end(),
                   [](const CornerPath& x, const CornerPath& y) { return x.size() < y.size(); });
  return out;
}

/// Symplectic basis: a is the first candidate meeting some candidate once, b
/// the first such partner, reversed if needed so that a . b = +1.
inline CuspSystem homologyBasis(const Triangulation& t, const CuspSurface& cusp) {
  if (cusp.eulerCharacteristic != 0) throw InputError("non-torus surface");
  const auto cands = candidateCycles(cusp);
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = 0; j < cands.size(); ++j) {
      const int x = intersectionNumber(cusp, cands[i], cands[j]);
      if (std::abs(x) != 1) continue;
      CuspSystem cs;
      cs.cusp = cusp.index;
      cs.a = cands[i];
      cs.b = x > 0 ? cands[j] : reversedPath(cands[j]);
      cs.wordA = wordFromPath(t, cs.a);
      cs.wordB = wordFromPath(t, cs.b);
      return cs;
    }
  throw ComputationError("no symplectic pair among candidate cycles");
}

/// Coordinates (x, y) of a closed path in the basis: gamma = x a + y b.
inline std::array<int, 2> homologyClass(const CuspSurface& cusp, const CuspSystem& cs, const CornerPath& g) {
  return {intersectionNumber(cusp, g, cs.b), -intersectionNumber(cusp, g, cs.a)};
}

inline std::vector<CuspSystem> peripheralSystems(const Triangulation& t, const std::vector<CuspSurface>& cusps) {
  std::vector<CuspSystem> out;
  for (const auto& c : cusps) out.push_back(homologyBasis(t, c));
  return out;
}

inline Complex evalLaurent(const std::vector<int>& exps, const Decoration& d) {
  Complex v = 1.0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    for (int p = 0; p < exps[k]; ++p) v *= d.z[k];
    for (int p = 0; p < -exps[k]; ++p) v /= d.z[k];
  }
  return v;
}

struct CuspHolonomy {
  Complex A, Astar, B, Bstar;

  std::array<Complex, 4> values() const { return {A, Astar, B, Bstar}; }
  double unipotentDefect() const {
    double m = 0;
    for (const auto& v : values()) m = std::max(m, std::abs(v - 1.0));
    return m;
  }
};

inline std::vector<CuspHolonomy> hol(const std::vector<CuspSystem>& cs, const Decoration& d) {
  std::vector<CuspHolonomy> out;
  for (const auto& c : cs)
    out.push_back({evalLaurent(c.wordA.A, d), evalLaurent(c.wordA.Astar, d), evalLaurent(c.wordB.A, d),
                   evalLaurent(c.wordB.Astar, d)});
  return out;
}

/// Rows (dlog A_s, dlog A*_s, dlog B_s, dlog B*_s) for each cusp.
inline Eigen::MatrixXi dlogHol(const std::vector<CuspSystem>& cs, int nu) {
  const int n = kSlotsPerTet * nu;
  Eigen::MatrixXi M = Eigen::MatrixXi::Zero(4 * static_cast<int>(cs.size()), n);
  int r = 0;
  for (const auto& c : cs)
    for (const auto* w : {&c.wordA.A, &c.wordA.Astar, &c.wordB.A, &c.wordB.Astar}) {
      for (int k = 0; k < n; ++k) M(r, k) = (*w)[k];
      ++r;
    }
  return M;
}

/// "z12*z41/(w21*w32)" in canonical coordinate order.
inline std::string renderLaurent(const std::vector<int>& exps, int nu) {
  std::string num, den;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    const std::string name = CoordIndex::fromGlobal(static_cast<int>(k)).name(nu);
    for (int p = 0; p < std::abs(exps[k]); ++p) {
      std::string& target = exps[k] > 0 ? num : den;
      if (!target.empty()) target += "*";
      target += name;
    }
  }
  if (num.empty()) num = "1";
  if (den.empty()) return num;
  return num + "/(" + den + ")";
}

inline std::string renderPath(const CornerPath& p, int nu) {
  std::string out;
  for (const auto& s : p) {
    if (!out.empty()) out += " ";
    out += tetName(s.tet, nu) + std::to_string(s.vertex) + std::to_string(s.corner) +
           (s.side == Side::Left ? "L" : "R");
  }
  return out;
}

/// Inverse of renderPath for the two-letter naming: "z12L w32R ...".
inline CornerPath parsePath(const std::string& text, int nu) {
  CornerPath out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') {
      ++pos;
      continue;
    }
    const std::size_t end = std::min(text.find(' ', pos), text.size());
    const std::string tok = text.substr(pos, end - pos);
    pos = end;
    if (tok.size() != 4 || (tok[3] != 'L' && tok[3] != 'R')) throw InputError("bad path step \"" + tok + "\"");
    int tet = -1;
    for (int t = 0; t < nu; ++t)
      if (tetName(t, nu) == tok.substr(0, 1)) tet = t;
    const int i = tok[1] - '0', j = tok[2] - '0';
    if (tet < 0 || i < 1 || i > 4 || j < 1 || j > 4 || i == j) throw InputError("bad path step \"" + tok + "\"");
    out.push_back({tet, i, j, tok[3] == 'L' ? Side::Left : Side::Right});
  }
  return out;
}

}  // namespace pgl3glue
