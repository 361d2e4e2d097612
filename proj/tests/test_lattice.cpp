#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace pgl3glue;
using namespace testing_helpers;

namespace {

void expectIdentities(const Triangulation& t) {
  const LatticeMaps L = buildLatticeMaps(t);
  const int ell = static_cast<int>(cuspLinks(t).size());
  const DimensionReport R = dimensionReport(L, ell);
  for (const auto& c : R.checks) EXPECT_EQ(c.value, c.expected) << t.name() << " nu=" << t.nu() << " " << c.name;
  EXPECT_TRUE(R.pSkew);
  EXPECT_TRUE(R.FstarPFSkew);
  EXPECT_TRUE(R.kernelIdentity);
  EXPECT_EQ(R.torsionLambda1, 1);
  EXPECT_EQ(R.torsionImPF, 1);
}

WpVector<Complex> wpImage(const Eigen::MatrixXi& H, const Eigen::VectorXcd& xi, int starSign) {
  const Eigen::VectorXcd d = H.cast<Complex>() * xi;
  WpVector<Complex> w;
  w.aPart = {Complex(starSign) * d(1), d(0)};
  w.bPart = {Complex(starSign) * d(3), d(2)};
  return w;
}

}  // namespace

TEST(Lattice, SisterDimensions) {
  const auto& R = sisterModel().dimensions();
  std::map<std::string, long long> got;
  for (const auto& c : R.checks) got[c.name] = c.value;
  EXPECT_EQ(got["rank F"], 8);
  EXPECT_EQ(got["dim Ker p"], 16);
  EXPECT_EQ(got["dim (Ker p ∩ Im F)"], 2);
  EXPECT_EQ(got["dim (Im p ∩ Ker F*)"], 10);
  EXPECT_EQ(got["dim Im(p∘F)"], 6);
  EXPECT_TRUE(R.kernelIdentity);
  EXPECT_TRUE(R.pass());
}

TEST(Lattice, IdentitiesOnRandomTwoTetGluings) {
  for (std::uint64_t seed = 100; seed < 104; ++seed) expectIdentities(findRandomValid(2, seed));
}

TEST(Lattice, IdentitiesOnRandomFourTetGluings) {
  for (std::uint64_t seed = 200; seed < 203; ++seed) expectIdentities(findRandomValid(4, seed));
}

TEST(Lattice, PEqualsQtOmegaQ) {
  const auto& L = sisterModel().maps();
  EXPECT_TRUE(L.p == L.Q.transpose() * L.Omega * L.Q);
  EXPECT_TRUE(L.Omega.transpose() == -L.Omega);
}

TEST(Exact, IntegerKernelIsSaturatedAndComplete) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix M(4, 7);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 7; ++j) M(i, j) = u(rng);
    // Make one row dependent so the rank is not maximal.
    for (int j = 0; j < 7; ++j) M(3, j) = 2 * M(0, j) - M(1, j);
    const IntMatrix K = integerKernel(M);
    EXPECT_TRUE(M * K == IntMatrix(4, K.cols()));
    EXPECT_EQ(K.cols(), 7 - exactRank(M));
    EXPECT_EQ(saturationIndex(K), 1);
  }
}

TEST(Exact, SmithDiagonalKnownCase) {
  IntMatrix M(2, 2);
  M(0, 0) = 2;
  M(0, 1) = 4;
  M(1, 0) = 6;
  M(1, 1) = 8;
  const auto d = smithDiagonal(M);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(abs(d[0]), 2);
  EXPECT_EQ(abs(d[1]), 4);
}

TEST(Exact, SaturationDetectsIndex) {
  IntMatrix L(3, 1);
  L(0, 0) = 2;
  L(1, 0) = 4;
  L(2, 0) = 6;
  EXPECT_EQ(saturationIndex(L), 2);
  EXPECT_TRUE(latticeContains(saturate(L), L));
  EXPECT_FALSE(sameLattice(L, saturate(L)));
}

TEST(Lattice, OmegaStarRejectsVectorsOutsideJStar) {
  const int n = 32;
  Eigen::VectorXcd xi = Eigen::VectorXcd::Zero(n);
  xi(CoordIndex::face(0, 1).global()) = 1.0;
  EXPECT_THROW(omegaStarChecked(2, xi, xi), InputError);
}

TEST(Lattice, WpPairingFormula) {
  WpVector<double> u{0, {1, 0}, {0, 0}}, v{0, {0, 0}, {1, 0}};
  EXPECT_NEAR(wpPairing(u, v), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(wpPairing(v, u), -2.0 / 3.0, 1e-15);
  WpVector<double> w{1, {1, 0}, {0, 0}};
  EXPECT_THROW(wpPairing(u, w), InputError);
}

// The image of the tangent space under dlog hol is isotropic for the wp
// pairing with (n, m) = (-dlog A*, dlog A); the opposite sign is not.
TEST(Lattice, WpIsotropyConventionIsPinned) {
  const auto& m = sisterModel();
  const auto base = constantPoint(2, kOmegaPlus);
  for (const auto& target : {std::pair{Complex(1.01, 0.0), Complex(0.99, 0.005)}, std::pair{Complex(1.0, 0.01), Complex(1.0, 0.0)}, std::pair{Complex(1.04, 0.0), Complex(1.0, 0.0)}}) {
    const auto sol = solveHolTarget(m, base, {target});
    const Decoration d = expandReduced(sol.newton.point);
    const auto ts = tangentSpace(m, d);
    ASSERT_EQ(ts.basis.cols(), 2);
    const Eigen::VectorXcd x = ts.basis.col(0), y = ts.basis.col(1);
    const Complex good = wpPairing(wpImage(m.dlogHolMatrix(), x, -1), wpImage(m.dlogHolMatrix(), y, -1));
    const Complex bad = wpPairing(wpImage(m.dlogHolMatrix(), x, +1), wpImage(m.dlogHolMatrix(), y, +1));
    // Roundoff against a defect growing with the distance from the unipotent point.
    EXPECT_LE(std::abs(good), 1e-12);
    EXPECT_GE(std::abs(bad), 1e-7);
  }
}
