#pragma once

// The complex C1 + C2 --F--> J2 --p--> (J2)* --F*--> C1 + C2 over Z, its
// dimension identities, the pairing Omega* on J* and the wp pairing.

#include <complex>
#include <string>
#include <vector>

#include "exact.hpp"
#include "gluing.hpp"
#include "triangulation.hpp"

namespace pgl3glue {

/// Quotient map q : J2 -> J (8 per tetrahedron) in the basis
/// (e_{v,c1}, e_{v,c2}) per vertex, with e_{v,c3} = -e_{v,c1} - e_{v,c2}.
inline IntMatrix quotientMap(int nu) {
  IntMatrix Q(8 * nu, kSlotsPerTet * nu);
  auto addEdge = [&](int tet, int i, int j, int col, int mult) {
    const auto f = vertexFrame(i);
    const int base = 8 * tet + 2 * (i - 1);
    if (j == f.c1) Q(base, col) += mult;
    else if (j == f.c2) Q(base + 1, col) += mult;
    else {
      Q(base, col) -= mult;
      Q(base + 1, col) -= mult;
    }
  };
  for (int t = 0; t < nu; ++t) {
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        if (i != j) addEdge(t, i, j, CoordIndex::edge(t, i, j).global(), 1);
    for (int l = 1; l <= 4; ++l)
      for (int a : faceTriple(l)) addEdge(t, a, l, CoordIndex::face(t, l).global(), 1);
  }
  return Q;
}

inline IntMatrix symplecticBlock(int nu) {
  IntMatrix W(8 * nu, 8 * nu);
  for (int k = 0; k < 4 * nu; ++k) {
    W(2 * k, 2 * k + 1) = 1;
    W(2 * k + 1, 2 * k) = -1;
  }
  return W;
}

/// Gram matrix of Omega* on (J2)* coordinates: xi^T W eta.
inline IntMatrix omegaStarGram(int nu) {
  IntMatrix W(kSlotsPerTet * nu, kSlotsPerTet * nu);
  for (int t = 0; t < nu; ++t)
    for (int v = 1; v <= 4; ++v) {
      const auto f = vertexFrame(v);
      const int a = CoordIndex::edge(t, v, f.c1).global();
      const int b = CoordIndex::edge(t, v, f.c2).global();
      W(a, b) = 1;
      W(b, a) = -1;
    }
  return W;
}

/// Generators of Ker(Omega2) as rows: vertex sums and face relations.
inline IntMatrix kernelOmega2Rows(int nu) {
  IntMatrix K(8 * nu, kSlotsPerTet * nu);
  int r = 0;
  for (int t = 0; t < nu; ++t) {
    for (int l = 1; l <= 4; ++l, ++r) {
      K(r, CoordIndex::face(t, l).global()) = 1;
      for (int a : faceTriple(l)) K(r, CoordIndex::edge(t, a, l).global()) = -1;
    }
    for (int v = 1; v <= 4; ++v, ++r)
      for (int w = 1; w <= 4; ++w)
        if (w != v) K(r, CoordIndex::edge(t, v, w).global()) = 1;
  }
  return K;
}

struct LatticeMaps {
  int nu = 0;
  IntMatrix F;      // 16nu x 4nu
  IntMatrix Q;      // 8nu x 16nu
  IntMatrix Omega;  // 8nu x 8nu
  IntMatrix p;      // 16nu x 16nu, Q^T Omega Q
  IntMatrix Fstar;  // 4nu x 16nu
  IntMatrix W;      // Omega* Gram on (J2)*
};

inline LatticeMaps buildLatticeMaps(const Triangulation& t) {
  LatticeMaps L;
  L.nu = t.nu();
  L.F = IntMatrix::fromEigen(buildF(t, edgeClasses(t)));
  L.Q = quotientMap(t.nu());
  L.Omega = symplecticBlock(t.nu());
  L.p = L.Q.transpose() * L.Omega * L.Q;
  L.Fstar = L.F.transpose();
  L.W = omegaStarGram(t.nu());
  return L;
}

struct IdentityCheck {
  std::string name;
  long long value = 0;
  long long expected = 0;
  bool pass() const { return value == expected; }
};

struct DimensionReport {
  int nu = 0, cusps = 0;
  std::vector<IdentityCheck> checks;
  bool pSkew = false;
  bool FstarPFSkew = false;
  bool kernelIdentity = false;
  BigInt torsionLambda1 = 1;  // [Sat : L] for Im p ∩ Ker F*
  BigInt torsionImPF = 1;     // [Sat : L] for Im(p∘F)
  IntMatrix lambda1;          // Z-basis of Im p ∩ Ker F*
  IntMatrix imPF;             // Z-basis of Im(p∘F)
  IntMatrix omegaKernel;      // Z-basis of Ker(Omega* | lambda1)

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return pSkew && FstarPFSkew && kernelIdentity;
  }
};

/// Ranks and the kernel identity Ker(Omega*|Im p ∩ Ker F*) = Im(p∘F), all
/// over Z. Sublattices are compared after saturation.
inline DimensionReport dimensionReport(const LatticeMaps& L, int cusps) {
  DimensionReport R;
  R.nu = L.nu;
  R.cusps = cusps;
  const int n = kSlotsPerTet * L.nu;
  const long long nu = L.nu, ell = cusps;

  const int rankF = exactRank(L.F);
  const int rankP = exactRank(L.p);
  const IntMatrix pF = L.p * L.F;
  const int rankPF = exactRank(pF);
  const IntMatrix FtP = L.Fstar * L.p;
  const int rankFtP = exactRank(FtP);

  R.pSkew = (L.p.transpose() == -L.p);
  const IntMatrix FpF = L.Fstar * pF;
  R.FstarPFSkew = (FpF.transpose() == -FpF);

  R.lambda1 = latticeBasis(L.p * integerKernel(FtP));
  R.imPF = latticeBasis(pF);
  const IntMatrix gram = R.lambda1.transpose() * L.W * R.lambda1;
  R.omegaKernel = latticeBasis(R.lambda1 * integerKernel(gram));

  R.torsionLambda1 = saturationIndex(R.lambda1);
  R.torsionImPF = saturationIndex(R.imPF);
  R.kernelIdentity = sameLattice(saturate(R.omegaKernel), saturate(R.imPF));

  R.checks = {
      {"rank F", rankF, 4 * nu},
      {"rank p", rankP, 8 * nu},
      {"dim Ker p", n - rankP, 8 * nu},
      {"dim (Ker p ∩ Im F)", rankF - rankPF, 2 * ell},
      {"dim (Im p ∩ Ker F*)", rankP - rankFtP, 4 * nu + 2 * ell},
      {"dim Im(p∘F)", rankPF, 4 * nu - 2 * ell},
      {"dim Ker(Ω* restricted)", R.omegaKernel.cols(), 4 * nu - 2 * ell},
  };
  return R;
}

/// sum over (tet, vertex) of xi_{c1} eta_{c2} - xi_{c2} eta_{c1}.
template <typename Scalar, typename VecA, typename VecB>
Scalar omegaStar(int nu, const VecA& xi, const VecB& eta) {
  Scalar s = 0;
  for (int t = 0; t < nu; ++t)
    for (int v = 1; v <= 4; ++v) {
      const auto f = vertexFrame(v);
      const int a = CoordIndex::edge(t, v, f.c1).global();
      const int b = CoordIndex::edge(t, v, f.c2).global();
      s += Scalar(xi[a]) * Scalar(eta[b]) - Scalar(xi[b]) * Scalar(eta[a]);
    }
  return s;
}

/// Largest |xi(k)| over generators k of Ker(Omega2), relative to |xi|.
inline double distanceFromJStar(int nu, const Eigen::VectorXcd& xi) {
  const Eigen::MatrixXcd K = kernelOmega2Rows(nu).toDouble().cast<std::complex<double>>();
  const double scale = std::max(1.0, xi.norm());
  return (K * xi).cwiseAbs().maxCoeff() / scale;
}

/// Omega* with the J* membership check of both arguments.
inline std::complex<double> omegaStarChecked(int nu, const Eigen::VectorXcd& xi,
                                             const Eigen::VectorXcd& eta, double tol = 1e-10) {
  if (distanceFromJStar(nu, xi) > tol || distanceFromJStar(nu, eta) > tol)
    throw InputError("argument not in J*");
  return omegaStar<std::complex<double>>(nu, xi, eta);
}

/// Element of H^1(T_s, Q^2): components (n, m) on the duals of a_s and b_s.
template <typename Scalar>
struct WpVector {
  int cusp = 0;
  std::array<Scalar, 2> aPart{};
  std::array<Scalar, 2> bPart{};
};

template <typename Scalar>
Scalar rootPairing(const std::array<Scalar, 2>& u, const std::array<Scalar, 2>& v) {
  return (Scalar(2) * u[0] * v[0] + Scalar(2) * u[1] * v[1] + u[0] * v[1] + v[0] * u[1]) / Scalar(3);
}

template <typename Scalar>
Scalar wpPairing(const WpVector<Scalar>& u, const WpVector<Scalar>& v) {
  if (u.cusp != v.cusp) throw InputError("wp pairing across different cusps");
  return rootPairing(u.aPart, v.bPart) - rootPairing(u.bPart, v.aPart);
}

}  // namespace pgl3glue
