#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <pgl3glue.hpp>
#include <random>

namespace testing_helpers {

using namespace pgl3glue;

inline const Catalog& sisterCatalog() {
  static const Catalog c = loadCatalog();
  return c;
}

inline const Model& sisterModel() {
  static const Model m(sisterCatalog().triangulation);
  return m;
}

inline const Complex kOmegaPlus(0.5, 0.8660254037844386);

inline ReducedPoint constantPoint(int nu, Complex x) {
  ReducedPoint r(nu);
  std::fill(r.x.begin(), r.x.end(), x);
  return r;
}

inline Decoration omegaPlus() { return expandReduced(constantPoint(2, kOmegaPlus)); }

/// Census point entries (pinned roots polished) by id.
inline ReducedPoint censusPoint(const std::string& id) {
  const auto& e = sisterCatalog().find(id);
  ReducedPoint p = *e.point;
  if (e.kind != CensusEntry::Kind::PinnedRoot) return p;
  p.x[e.pinnedIndex] = e.root;
  NewtonOptions no;
  no.pinned.assign(p.x.size(), false);
  no.pinned[e.pinnedIndex] = true;
  return newtonSolve(sisterModel(), p, SolveTarget::unipotent(1), no).point;
}

/// Random face pairing with random odd vertex maps; nullopt when it fails validation.
inline std::optional<Triangulation> randomGluing(int nu, std::mt19937_64& rng) {
  std::vector<int> faces(4 * nu);
  std::iota(faces.begin(), faces.end(), 0);
  std::shuffle(faces.begin(), faces.end(), rng);
  std::vector<FaceGluing> gl;
  for (int k = 0; k < 4 * nu; k += 2) {
    FaceGluing g;
    g.tet = faces[k] / 4;
    g.face = faces[k] % 4 + 1;
    g.toTet = faces[k + 1] / 4;
    g.toFace = faces[k + 1] % 4 + 1;
    std::vector<int> src, dst;
    for (int v = 1; v <= 4; ++v) {
      if (v != g.face) src.push_back(v);
      if (v != g.toFace) dst.push_back(v);
    }
    std::shuffle(dst.begin(), dst.end(), rng);
    std::array<std::int8_t, 4> img{};
    img[g.face - 1] = static_cast<std::int8_t>(g.toFace);
    for (int i = 0; i < 3; ++i) img[src[i] - 1] = static_cast<std::int8_t>(dst[i]);
    g.vertexMap = Perm4(img);
    if (!g.vertexMap.isOdd()) {
      std::swap(img[src[0] - 1], img[src[1] - 1]);
      g.vertexMap = Perm4(img);
    }
    gl.push_back(g);
  }
  try {
    Triangulation t = Triangulation::fromGluings("random", nu, gl);
    t.validate();
    return t;
  } catch (const InputError&) {
    return std::nullopt;
  }
}

inline Triangulation findRandomValid(int nu, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 200000; ++attempt)
    if (auto t = randomGluing(nu, rng)) return *t;
  throw std::runtime_error("no valid random gluing found");
}

inline Eigen::VectorXcd randomComplexVector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int k = 0; k < n; ++k) v(k) = Complex(g(rng), g(rng));
  return v;
}

/// Random closed walk in the dual graph of the cusp triangulation.
inline CornerPath randomClosedPath(const CuspSurface& cusp, std::mt19937_64& rng, int maxLen) {
  const int m = static_cast<int>(cusp.triangles.size());
  auto sidesOf = [&](int k) {
    std::vector<int> s;
    for (int c = 1; c <= 4; ++c)
      if (c != cusp.triangles[k].vertex) s.push_back(c);
    return s;
  };
  for (;;) {
    const int k0 = std::uniform_int_distribution<int>(0, m - 1)(rng);
    const auto s0 = sidesOf(k0);
    const int e0 = s0[std::uniform_int_distribution<int>(0, 2)(rng)];
    std::vector<detail::DualStep> steps{{k0, 0, e0}};
    auto [k, entry] = cusp.across[k0][e0];
    for (int len = 1; len < maxLen; ++len) {
      if (k == k0 && entry != e0) {
        steps.front().entry = entry;
        return detail::fromDual(cusp, steps);
      }
      std::vector<int> exits;
      for (int c : sidesOf(k))
        if (c != entry) exits.push_back(c);
      const int e = exits[std::uniform_int_distribution<int>(0, 1)(rng)];
      steps.push_back({k, entry, e});
      const auto next = cusp.across[k][e];
      k = next.triangle;
      entry = next.side;
    }
  }
}

/// Integer span of all monomial rows (f and h).
inline IntMatrix relationLattice(const EquationSystem& sys) {
  std::vector<std::vector<int>> rows;
  for (const auto& r : sys.fRows()) rows.push_back(r.exponents);
  for (const auto& r : sys.hRows()) rows.push_back(r.exponents);
  IntMatrix M(sys.columns(), static_cast<int>(rows.size()));
  for (int j = 0; j < M.cols(); ++j)
    for (int i = 0; i < M.rows(); ++i) M(i, j) = rows[j][i];
  return latticeBasis(M);
}

inline IntMatrix exponentDifference(const std::vector<int>& a, const std::vector<int>& b) {
  IntMatrix c(static_cast<int>(a.size()), 1);
  for (std::size_t k = 0; k < a.size(); ++k) c(static_cast<int>(k), 0) = a[k] - b[k];
  return c;
}

/// z -> z exp(eps xi), coordinatewise.
inline Decoration perturbLog(const Decoration& d, const Eigen::VectorXcd& xi, double eps) {
  Decoration out = d;
  for (std::size_t k = 0; k < d.z.size(); ++k) out.z[k] = d.z[k] * std::exp(eps * xi(static_cast<Eigen::Index>(k)));
  return out;
}

/// Five positive solutions near all-omega+, reached by Newton on small holonomy targets.
inline std::vector<ReducedPoint> positiveNewtonPoints() {
  std::vector<ReducedPoint> out;
  const std::vector<std::pair<Complex, Complex>> targets = {
      {Complex(1.01, 0.0), Complex(1.0, 0.0)},     {Complex(1.0, 0.02), Complex(0.99, 0.0)},
      {Complex(0.98, -0.01), Complex(1.01, 0.01)}, {Complex(1.0, 0.0), Complex(1.0, -0.02)},
      {Complex(1.015, 0.015), Complex(0.985, 0.01)}};
  for (const auto& t : targets)
    out.push_back(solveHolTarget(sisterModel(), constantPoint(2, kOmegaPlus), {t}).newton.point);
  return out;
}

}  // namespace testing_helpers
