#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace pgl3glue;
using namespace testing_helpers;

TEST(Gluing, RowCounts) {
  for (const auto& t : {sisterModel().triangulation(), findRandomValid(4, 21)}) {
    const EquationSystem sys(t);
    EXPECT_EQ(sys.hRows().size(), static_cast<std::size_t>(8 * t.nu()));
    EXPECT_EQ(sys.aRows().size(), static_cast<std::size_t>(4 * t.nu()));
    EXPECT_EQ(sys.fRows().size(), static_cast<std::size_t>(4 * t.nu()));
    EXPECT_EQ(sys.rows(), 16 * t.nu());
  }
}

TEST(Gluing, FRowsCoverEachCoordinateOnce) {
  for (const auto& t : {sisterModel().triangulation(), findRandomValid(4, 22)}) {
    const EquationSystem sys(t);
    std::vector<int> count(16 * t.nu(), 0);
    for (const auto& r : sys.fRows()) {
      int faces = 0;
      for (std::size_t k = 0; k < r.exponents.size(); ++k) {
        EXPECT_GE(r.exponents[k], 0);
        count[k] += r.exponents[k];
        if (CoordIndex::fromGlobal(static_cast<int>(k)).isFace()) faces += r.exponents[k];
      }
      EXPECT_EQ(faces, r.kind == RowKind::FFace ? 2 : 0);
    }
    for (int c : count) EXPECT_EQ(c, 1);
  }
}

TEST(Gluing, OmegaPlusSolvesEverything) {
  const auto r = sisterModel().system().residual(omegaPlus());
  EXPECT_EQ(r.size(), 32);
  EXPECT_LE(maxResidual(r), 1e-14);
}

TEST(Gluing, JacobianMatchesFiniteDifferences) {
  const auto& m = sisterModel();
  const auto& sys = m.system();
  std::mt19937_64 rng(8);
  const double eps = 1e-6;
  for (const char* id : {"geometric+", "CR+", "P-root-1"}) {
    const Decoration d = expandReduced(censusPoint(id));
    const Eigen::MatrixXcd J = sys.jacobianLog(d);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXcd xi = randomComplexVector(sys.columns(), rng);
      const Decoration dp = perturbLog(d, xi, eps), dm = perturbLog(d, xi, -eps);
      const Eigen::VectorXcd Jxi = J * xi;
      int k = 0;
      auto monomial = [&](const MonomialRow& row) {
        const Complex fd = (std::log(EquationSystem::evalMonomial(row, dp) / EquationSystem::evalMonomial(row, dm))) / (2 * eps);
        EXPECT_LE(std::abs(fd - Jxi(k)), 1e-6) << id << " row " << k;
        ++k;
      };
      for (const auto& row : sys.hRows()) monomial(row);
      for (const auto& row : sys.aRows()) {
        // The a-row is z_{c3} times the logarithmic derivative of the cross-ratio relation.
        const auto f = vertexFrame(row.vertex);
        const Complex z3 = d.edge(row.tet, row.vertex, f.c3);
        const Complex fd = std::log(EquationSystem::crossRatioValue(row, dp) / EquationSystem::crossRatioValue(row, dm)) / (2 * eps);
        EXPECT_LE(std::abs(z3 * fd - Jxi(k)), 1e-6) << id << " a-row " << k;
        ++k;
      }
      for (const auto& row : sys.fRows()) monomial(row);
    }
  }
}

TEST(Gluing, GeneratedEquationsMatchPublishedStrings) {
  const auto checks = publishedStringChecks(sisterModel(), sisterCatalog());
  ASSERT_GE(checks.size(), 2u);
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
}

TEST(Gluing, PublishedTextAgreesUpToFactorAndRowOrder) {
  const auto& sys = sisterModel().system();
  const auto& pub = sisterCatalog().published;
  std::vector<std::string> mine;
  for (const auto& r : sys.fRows()) mine.push_back(renderRow(r, 2));
  std::vector<std::string> theirs = pub.edgeEquations;
  theirs.insert(theirs.end(), pub.faceEquations.begin(), pub.faceEquations.end());
  ASSERT_EQ(mine.size(), theirs.size());
  int verbatim = 0;
  for (const auto& s : theirs) verbatim += std::count(mine.begin(), mine.end(), s) > 0;
  std::vector<std::string> a, b;
  for (const auto& s : mine) a.push_back(normalizeProduct(s));
  for (const auto& s : theirs) b.push_back(normalizeProduct(s));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  EXPECT_GE(verbatim, 1);
}

TEST(Gluing, EquationsJsonCarriesTextAndExponents) {
  const Json j = equationsJson(sisterModel().system());
  EXPECT_EQ(j["version"], std::string(kVersion));
  ASSERT_EQ(j["f"].size(), 8u);
  EXPECT_EQ(j["f"][0]["text"], "z12*z24*z31*w12*w24*w31 = 1");
  EXPECT_EQ(j["f"][0]["exponents"]["z24"], 1);
  EXPECT_EQ(j["a"].size(), 8u);
  EXPECT_EQ(j["h"].size(), 16u);
}

TEST(Gluing, JacobianRejectsInconsistentPoint) {
  Decoration d = omegaPlus();
  d.z[3] *= 1.01;
  EXPECT_THROW(sisterModel().system().jacobianLog(d), InputError);
}
