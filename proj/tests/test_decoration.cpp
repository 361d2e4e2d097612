#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace pgl3glue;
using namespace testing_helpers;

namespace {

ReducedPoint randomReduced(int nu, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.3, 3.0), a(0.0, 6.283185307179586);
  ReducedPoint p(nu);
  for (auto& x : p.x) x = std::polar(r(rng), a(rng));
  return p;
}

}  // namespace

TEST(Decoration, ExpansionSatisfiesVertexRelationsByHand) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ReducedPoint r = randomReduced(2, rng);
    const Decoration d = expandReduced(r);
    for (int t = 0; t < 2; ++t)
      for (int v = 1; v <= 4; ++v) {
        // The three corners at v, in cyclic order j -> k -> l.
        const int j = representative(v), k = cyclicNext(v, j), l = cyclicNext(v, k);
        const Complex zj = d.edge(t, v, j), zk = d.edge(t, v, k), zl = d.edge(t, v, l);
        EXPECT_NEAR(std::abs(zk - 1.0 / (1.0 - zj)), 0, 1e-12);
        EXPECT_NEAR(std::abs(zl - 1.0 / (1.0 - zk)), 0, 1e-12);
        EXPECT_NEAR(std::abs(zj * zk * zl + 1.0), 0, 1e-12);
      }
    EXPECT_LE(relationResiduals(d).max(), 1e-12);
  }
}

TEST(Decoration, FacesFromEdges) {
  const Decoration d = omegaPlus();
  // All edges equal w, so every face is -w^3 = 1.
  for (int t = 0; t < 2; ++t)
    for (int l = 1; l <= 4; ++l) EXPECT_NEAR(std::abs(d.face(t, l) - 1.0), 0, 1e-14);
}

TEST(Decoration, ReduceInvertsExpand) {
  std::mt19937_64 rng(4);
  const ReducedPoint r = randomReduced(3, rng);
  const ReducedPoint back = reduce(expandReduced(r));
  for (std::size_t k = 0; k < r.x.size(); ++k) EXPECT_NEAR(std::abs(back.x[k] - r.x[k]), 0, 1e-14);
}

TEST(Decoration, DegenerateInputsRejected) {
  ReducedPoint r = constantPoint(2, kOmegaPlus);
  r.x[5] = 1.0;
  EXPECT_THROW(expandReduced(r), InputError);
  r.x[5] = 0.0;
  EXPECT_THROW(expandReduced(r), InputError);
}

TEST(Decoration, InconsistentDecorationRejected) {
  Decoration d = omegaPlus();
  d.edge(1, 3, 4) *= 1.001;
  EXPECT_FALSE(isConsistent(d));
  EXPECT_THROW(reduce(d), InputError);
}

TEST(Decoration, ConjugationCommutesWithExpansion) {
  std::mt19937_64 rng(5);
  const ReducedPoint r = randomReduced(2, rng);
  const Decoration a = expandReduced(r.conj()), b = expandReduced(r).conj();
  for (std::size_t k = 0; k < a.z.size(); ++k) EXPECT_NEAR(std::abs(a.z[k] - b.z[k]), 0, 1e-14);
}

TEST(Decoration, Positivity) {
  EXPECT_TRUE(isPositive(omegaPlus()));
  EXPECT_FALSE(isPositive(omegaPlus().conj()));
}

TEST(Expression, Values) {
  EXPECT_NEAR(std::abs(evaluateExpression("(1+sqrt(-3))/2") - kOmegaPlus), 0, 1e-15);
  EXPECT_NEAR(std::abs(evaluateExpression("(1-sqrt(-3))/2") - std::conj(kOmegaPlus)), 0, 1e-15);
  EXPECT_NEAR(std::abs(evaluateExpression("1+(1+sqrt(5))/2") - 2.618033988749895), 0, 1e-15);
  EXPECT_NEAR(std::abs(evaluateExpression("i*i") + 1.0), 0, 0);
  EXPECT_NEAR(std::abs(evaluateExpression("2^-2 - 0.25")), 0, 0);
  EXPECT_NEAR(std::abs(evaluateExpression("-2*3+1e1")), 4, 0);
}

TEST(Expression, Variables) {
  ExpressionParser::Variables v{{"z12", Complex(2, 1)}, {"A", 3.0}};
  EXPECT_NEAR(std::abs(evaluateExpression("z12*A - 6", &v) - Complex(0, 3)), 0, 1e-15);
}

TEST(Expression, Errors) {
  try {
    evaluateExpression("1 + foo");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("unknown identifier 'foo'"), std::string::npos);
  }
  EXPECT_THROW(evaluateExpression("(1+2"), InputError);
  EXPECT_THROW(evaluateExpression("1/0"), InputError);
  EXPECT_THROW(evaluateExpression("1 2"), InputError);
}

TEST(PointIo, FullFormRoundTrip) {
  const Decoration d = omegaPlus();
  const Json j = {{"points", decorationToJson(d)}};
  const LoadedPoint p = parsePoint(writeJson(j), 2);
  for (std::size_t k = 0; k < d.z.size(); ++k) EXPECT_EQ(p.decoration.z[k], d.z[k]);
}

TEST(PointIo, FacesDerivedWhenOmitted) {
  Json j = {{"points", decorationToJson(omegaPlus())}};
  for (auto& e : j["points"])
    for (const char* f : {"123", "134", "142", "324"}) e["z"].erase(f);
  const LoadedPoint p = parsePoint(writeJson(j), 2);
  const Decoration d = omegaPlus();
  for (std::size_t k = 0; k < d.z.size(); ++k) EXPECT_NEAR(std::abs(p.decoration.z[k] - d.z[k]), 0, 1e-15);
}

TEST(PointIo, ReducedFormWithExpressions) {
  const std::string text = R"({"reduced": [
    {"tet": 1, "x": {"1": "(1+sqrt(-3))/2", "2": [0.5, 0.8660254037844386], "3": "(1+sqrt(-3))/2", "4": "(1+sqrt(-3))/2"}},
    {"tet": 2, "x": {"1": "(1+sqrt(-3))/2", "2": "(1+sqrt(-3))/2", "3": "(1+sqrt(-3))/2", "4": "(1+sqrt(-3))/2"}}],
    "ignored": 1})";
  const LoadedPoint p = parsePoint(text, 2);
  ASSERT_TRUE(p.reduced.has_value());
  EXPECT_LE(maxResidual(sisterModel().system().residual(p.decoration)), 1e-14);
}

TEST(PointIo, Errors) {
  EXPECT_THROW(parsePoint(R"({"reduced": [{"tet": 1, "x": {"1": 2, "2": 2, "3": 2, "4": 2}}]})", 2), InputError);
  EXPECT_THROW(parsePoint(R"({"other": []})", 2), InputError);
  EXPECT_THROW(parsePoint(R"({"reduced": [{"tet": 1, "x": {"1": 2, "2": 2, "3": 2, "5": 2}}]})", 1), InputError);
  EXPECT_THROW(parsePoint(R"({"reduced": [{"tet": 1, "x": {"1": "q", "2": 2, "3": 2, "4": 2}}]})", 1), InputError);
  EXPECT_THROW(loadPoint("/nonexistent/point.json", 2), InputError);
}

TEST(JsonWriter, SeventeenDigitsAndDeterminism) {
  const Json j = {{"a", 0.1}, {"b", 3}, {"c", Json::array({1.0 / 3.0, -2.5e-300})}};
  const std::string s = writeJson(j);
  EXPECT_EQ(s, "{\"a\":0.10000000000000001,\"b\":3,\"c\":[0.33333333333333331,-2.5e-300]}\n");
  EXPECT_EQ(writeJson(parseJson(s)), s);
}
