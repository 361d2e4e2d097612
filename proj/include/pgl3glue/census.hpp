#pragma once

// The figure-eight sister catalog: loading, and end-to-end verification of
// every entry's expected flags.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "expression.hpp"
#include "io.hpp"
#include "solver.hpp"

#ifndef PGL3GLUE_DATA_DIR
#define PGL3GLUE_DATA_DIR "data"
#endif

namespace pgl3glue {

inline std::string defaultCatalogDir(const std::string& name = "sister") {
  return std::string(PGL3GLUE_DATA_DIR) + "/" + name;
}

struct ExpectedFlags {
  bool unipotent = false;
  bool rigidFirstOrder = false;
  bool transversal = false;
  bool positive = false;
  std::vector<std::string> subgroups;
};

struct CensusEntry {
  enum class Kind { Point, PinnedRoot, Family };

  std::string id;
  Kind kind = Kind::Point;
  std::optional<ReducedPoint> point;  // exact value, or the Newton seed for pinned roots
  // pinned roots
  std::string polynomial;
  std::array<std::string, 2> rootDigits;
  Complex root;
  int pinnedIndex = -1;
  int solutionsAtRoot = 0;
  int rigidAtRoot = 0;
  // families
  std::string family;
  int samples = 0;
  std::optional<Complex> circleTau;
  ExpectedFlags expected;
  std::string provenance;
};

inline std::string kindName(CensusEntry::Kind k) {
  switch (k) {
    case CensusEntry::Kind::Point: return "point";
    case CensusEntry::Kind::PinnedRoot: return "pinned-root";
    case CensusEntry::Kind::Family: return "family";
  }
  return "";
}

struct PublishedStrings {
  std::vector<std::string> edgeEquations, faceEquations;
  std::map<std::string, std::string> words;
  std::vector<std::string> relations;
  std::map<std::string, std::string> paths;
};

struct Catalog {
  std::string name;
  Triangulation triangulation;
  std::map<std::string, std::vector<int>> polynomials;  // highest degree first
  PublishedStrings published;
  std::vector<CensusEntry> entries;

  const CensusEntry& find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return e;
    throw InputError("unknown census id " + id);
  }
};

namespace detail {

inline std::vector<std::string> stringList(const Json& j) {
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

inline std::map<std::string, std::string> stringMap(const Json& j) {
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it->get<std::string>();
  return out;
}

}  // namespace detail

inline Catalog loadCatalog(const std::string& dir = defaultCatalogDir()) {
  const Json j = parseJson(readFile(dir + "/catalog.json"), "catalog");
  Catalog c;
  try {
    c.name = j.at("name").get<std::string>();
    c.triangulation = loadTriangulation(dir + "/" + j.at("triangulation").get<std::string>());
    const int nu = c.triangulation.nu();
    for (auto it = j.at("polynomials").begin(); it != j.at("polynomials").end(); ++it)
      c.polynomials[it.key()] = it->get<std::vector<int>>();
    const Json& pub = j.at("published");
    c.published.edgeEquations = detail::stringList(pub.at("edge_equations"));
    c.published.faceEquations = detail::stringList(pub.at("face_equations"));
    c.published.words = detail::stringMap(pub.at("words"));
    c.published.relations = detail::stringList(pub.at("peripheral_relations"));
    c.published.paths = detail::stringMap(pub.at("paths"));
    for (const auto& e : j.at("entries")) {
      CensusEntry ce;
      ce.id = e.at("id").get<std::string>();
      const std::string kind = e.at("kind").get<std::string>();
      const Json& ex = e.at("expected");
      ce.expected = {ex.at("unipotent").get<bool>(), ex.at("rigid_first_order").get<bool>(),
                     ex.at("transversal").get<bool>(), ex.at("positive").get<bool>(),
                     detail::stringList(ex.at("subgroups"))};
      ce.provenance = e.value("provenance", "");
      if (kind == "point") {
        ce.kind = CensusEntry::Kind::Point;
        ce.point = parseReduced(e.at("reduced"), nu);
        if (e.contains("circle")) ce.circleTau = parseComplex(e.at("circle").at("tau"), ce.id + " circle");
      } else if (kind == "pinned-root") {
        ce.kind = CensusEntry::Kind::PinnedRoot;
        ce.polynomial = e.at("polynomial").get<std::string>();
        if (!c.polynomials.count(ce.polynomial)) throw InputError(ce.id + ": unknown polynomial");
        ce.rootDigits = {e.at("root")[0].get<std::string>(), e.at("root")[1].get<std::string>()};
        ce.root = {std::stod(ce.rootDigits[0]), std::stod(ce.rootDigits[1])};
        const int tet = e.at("pinned").at("tet").get<int>() - 1, v = e.at("pinned").at("vertex").get<int>();
        ce.pinnedIndex = 4 * tet + v - 1;
        ce.point = parseReduced(e.at("seed"), nu);
        ce.solutionsAtRoot = e.at("unipotent_solutions_at_root").get<int>();
        ce.rigidAtRoot = e.at("rigid_solutions_at_root").get<int>();
      } else if (kind == "family") {
        ce.kind = CensusEntry::Kind::Family;
        ce.family = e.at("family").get<std::string>();
        FamilyParametrization::fromId(ce.family);
        ce.samples = e.at("samples").get<int>();
      } else {
        throw InputError(ce.id + ": unknown entry kind " + kind);
      }
      c.entries.push_back(std::move(ce));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed catalog: ") + e.what());
  }
  return c;
}

using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// |p(root)| by Horner in 50-digit arithmetic.
inline BigFloat polynomialAbs(const std::vector<int>& coeffs, const BigFloat& re, const BigFloat& im) {
  BigFloat a = 0, b = 0;
  for (int c : coeffs) {
    const BigFloat na = a * re - b * im + c;
    b = a * im + b * re;
    a = na;
  }
  return sqrt(a * a + b * b);
}

inline Complex polynomialValue(const std::vector<int>& coeffs, Complex x) {
  Complex v = 0;
  for (int c : coeffs) v = v * x + static_cast<double>(c);
  return v;
}

/// Roots via eigenvalues of the companion matrix.
inline std::vector<Complex> polynomialRoots(const std::vector<int>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) C(0, k) = -static_cast<double>(coeffs[k + 1]) / coeffs[0];
  for (int k = 1; k < n; ++k) C(k, k - 1) = 1;
  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(C, false).eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Maps coordinate names (z12, w43, ...) to values for evaluating published strings.
inline ExpressionParser::Variables coordinateVariables(const Decoration& d) {
  ExpressionParser::Variables vars;
  for (int t = 0; t < d.nu; ++t)
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        if (i != j) vars[CoordIndex::edge(t, i, j).name(d.nu)] = d.edge(t, i, j);
  return vars;
}

/// Product "a*b*c = 1" with its factors sorted, for order-insensitive comparison.
inline std::string normalizeProduct(const std::string& eq) {
  const auto pos = eq.find(" = ");
  const std::string lhs = eq.substr(0, pos);
  std::vector<std::string> f;
  std::size_t start = 0;
  for (;;) {
    const auto k = lhs.find('*', start);
    f.push_back(lhs.substr(start, k == std::string::npos ? std::string::npos : k - start));
    if (k == std::string::npos) break;
    start = k + 1;
  }
  std::sort(f.begin(), f.end());
  std::string out;
  for (const auto& s : f) out += (out.empty() ? "" : "*") + s;
  return out + (pos == std::string::npos ? "" : eq.substr(pos));
}

struct Check {
  std::string name;
  bool pass = false;
  double value = 0;
  std::string detail;
};

struct EntryReport {
  std::string id;
  std::string kind;
  bool pass = true;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  std::optional<ReducedPoint> point;       // polished point for point-like entries
  std::optional<AnalysisReport> analysis;  // point-like entries only

  void add(Check c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
  }
};

struct CensusReport {
  std::string catalog;
  std::vector<Check> catalogChecks;
  std::vector<EntryReport> entries;
  bool pass() const {
    for (const auto& c : catalogChecks)
      if (!c.pass) return false;
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

struct CensusOptions {
  Tolerances tol;
  double pointResidual = 1e-10;
  double familyResidual = 1e-11;
  double familyHolonomy = 1e-10;
  double relationTol = 1e-9;
  double circleTol = 1e-9;
  int jobs = 1;
};

namespace detail {

inline double relationDefect(const Catalog& c, const Decoration& d) {
  auto vars = coordinateVariables(d);
  for (const char* w : {"A", "Astar", "B", "Bstar"}) vars[w] = 1.0;
  double m = 0;
  for (const auto& r : c.published.relations) m = std::max(m, std::abs(evaluateExpression(r, &vars)));
  return m;
}

/// Checks shared by points and family samples. `tag` prefixes check names.
inline void checkPoint(const Model& m, const Catalog& c, const Decoration& d, const ExpectedFlags& ex,
                       double residualLimit, const CensusOptions& opt, const std::string& tag, EntryReport& out,
                       AnalysisReport* keep = nullptr) {
  const double res = maxResidual(m.system().residual(d));
  out.add({tag + "residual", res <= residualLimit, res, "limit " + std::to_string(residualLimit)});
  AnalysisReport R;
  try {
    R = analyze(m, d, opt.tol);
  } catch (const std::exception& e) {
    out.add({tag + "analysis", false, 0, e.what()});
    return;
  }
  double defect = 0;
  for (const auto& h : R.holonomy) defect = std::max(defect, h.unipotentDefect());
  out.add({tag + "unipotent", R.unipotent == ex.unipotent, defect, ex.unipotent ? "expected unipotent" : "expected not unipotent"});
  if (ex.unipotent) {
    const double rel = relationDefect(c, d);
    out.add({tag + "printed relations", rel <= opt.relationTol, rel, ""});
  }
  out.add({tag + "kernel cross-check", R.dimKerDg == R.dimKerDgLattice && R.kernelAngle <= opt.tol.principalAngle,
           R.kernelAngle, "dim " + std::to_string(R.dimKerDg)});
  if (ex.unipotent) {
    const int want = ex.rigidFirstOrder ? 0 : 1;
    out.add({tag + "unipotent tangent dim", R.dimUnipotentTangent == want, static_cast<double>(R.dimUnipotentTangent),
             "expected " + std::to_string(want)});
  }
  out.add({tag + "transversal", R.transversal == ex.transversal, static_cast<double>(R.rigidityIntersectionDim),
           ex.transversal ? "expected transversal" : "expected not transversal"});
  out.add({tag + "positive", R.positive == ex.positive, 0, ex.positive ? "expected positive" : "expected not positive"});
  out.add({tag + "determinate dimensions", R.warnings.empty(), static_cast<double>(R.warnings.size()), ""});
  for (const auto& w : R.warnings) out.warnings.push_back(tag + w);
  if (keep) *keep = R;
}

inline EntryReport verifyEntry(const Model& m, const Catalog& c, const CensusEntry& e, const CensusOptions& opt) {
  EntryReport out;
  out.id = e.id;
  out.kind = kindName(e.kind);
  try {
    if (e.kind == CensusEntry::Kind::Family) {
      const auto f = FamilyParametrization::fromId(e.family);
      const auto samples = sampleFamily(m, f, familySampleParameters(e.samples));
      double worstRes = 0, worstHol = 0;
      for (std::size_t k = 0; k < samples.size(); ++k) {
        worstRes = std::max(worstRes, samples[k].residual);
        worstHol = std::max(worstHol, samples[k].holonomyDefect);
        checkPoint(m, c, expandReduced(samples[k].point), e.expected, opt.familyResidual, opt,
                   "sample " + std::to_string(k + 1) + ": ", out);
      }
      out.add({"family residual", worstRes <= opt.familyResidual, worstRes, std::to_string(samples.size()) + " samples"});
      out.add({"family holonomy", worstHol <= opt.familyHolonomy, worstHol, "max |hol - 1|"});
      return out;
    }
    ReducedPoint p = *e.point;
    if (e.kind == CensusEntry::Kind::PinnedRoot) {
      const auto& poly = c.polynomials.at(e.polynomial);
      const BigFloat val = polynomialAbs(poly, BigFloat(e.rootDigits[0]), BigFloat(e.rootDigits[1]));
      out.add({"root of " + e.polynomial, val <= BigFloat("1e-25"), static_cast<double>(val), "50-digit evaluation"});
      p.x[e.pinnedIndex] = e.root;
      NewtonOptions no;
      no.tol = opt.tol.residual;
      no.pinned.assign(p.x.size(), false);
      no.pinned[e.pinnedIndex] = true;
      const auto res = newtonSolve(m, p, SolveTarget::unipotent(m.cuspCount()), no);
      out.add({"pinned Newton", res.converged, res.maxResidual, res.message});
      p = res.point;
      const double drift = std::abs(p.x[e.pinnedIndex] - e.root);
      out.add({"pinned coordinate", drift <= 1e-14, drift, ""});
    }
    out.point = p;
    const Decoration d = expandReduced(p);
    AnalysisReport R;
    checkPoint(m, c, d, e.expected, opt.pointResidual, opt, "", out, &R);
    out.analysis = R;
    if (e.circleTau) {
      const Complex z21 = d.edge(0, 2, 1);
      const double v = std::abs(std::norm(z21 - *e.circleTau) - 1.0);
      out.add({"PU21 circle", v <= opt.circleTol, v, "(x - tau)^2 + y^2 = 1 at z21"});
    }
  } catch (const std::exception& ex) {
    out.add({"exception", false, 0, ex.what()});
  }
  return out;
}

inline double maxCoordinateDistance(const ReducedPoint& a, const ReducedPoint& b) {
  double m = 0;
  for (std::size_t k = 0; k < a.x.size(); ++k) m = std::max(m, std::abs(a.x[k] - b.x[k]));
  return m;
}

inline bool sameDimensions(const AnalysisReport& a, const AnalysisReport& b) {
  return a.unipotent == b.unipotent && a.dimKerDg == b.dimKerDg && a.dimKerDgLattice == b.dimKerDgLattice &&
         a.dimUnipotentTangent == b.dimUnipotentTangent && a.transversal == b.transversal &&
         a.rigidityIntersectionDim == b.rigidityIntersectionDim;
}

}  // namespace detail

/// Generated L_e, L_f and path words against the published strings.
inline std::vector<Check> publishedStringChecks(const Model& m, const Catalog& c) {
  std::vector<Check> out;
  const int nu = m.nu();
  const auto& rows = m.system().fRows();
  const std::size_t ne = 2 * m.system().edges().size();
  auto compare = [&](const std::string& name, const std::vector<std::string>& published, std::size_t from, std::size_t to) {
    std::vector<std::string> mine, theirs;
    for (std::size_t k = from; k < to && k < rows.size(); ++k) mine.push_back(normalizeProduct(renderRow(rows[k], nu)));
    for (const auto& s : published) theirs.push_back(normalizeProduct(s));
    std::sort(mine.begin(), mine.end());
    std::sort(theirs.begin(), theirs.end());
    std::string detail;
    for (const auto& s : theirs)
      if (!std::binary_search(mine.begin(), mine.end(), s)) detail += "missing " + s + "; ";
    out.push_back({name, mine == theirs, 0, detail});
  };
  compare("edge equations", c.published.edgeEquations, 0, ne);
  compare("face equations", c.published.faceEquations, ne, rows.size());

  // Published paths reproduce the published words at a generic point.
  Decoration d(nu);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (auto& v : d.z) v = std::polar(u(rng), u(rng));
  auto vars = coordinateVariables(d);
  for (const auto& [name, text] : c.published.paths) {
    try {
      const auto w = wordFromPath(m.triangulation(), parsePath(text, nu));
      const std::string star = name + "star";
      const double e1 = std::abs(evalLaurent(w.A, d) / evaluateExpression(c.published.words.at(name), &vars) - 1.0);
      const double e2 = std::abs(evalLaurent(w.Astar, d) / evaluateExpression(c.published.words.at(star), &vars) - 1.0);
      out.push_back({"path " + name + " words", std::max(e1, e2) <= 1e-12, std::max(e1, e2), text});
    } catch (const std::exception& ex) {
      out.push_back({"path " + name + " words", false, 0, ex.what()});
    }
  }
  return out;
}

/// Verifies every entry, plus catalog-wide root simplicity, Galois stability
/// and the published strings. Entries run in parallel; results keep catalog order.
inline CensusReport verifyCatalog(const Catalog& c, const CensusOptions& opt = {}) {
  const Model m(c.triangulation);
  CensusReport R;
  R.catalog = c.name;
  R.entries.resize(c.entries.size());
  const int jobs = std::max(1, opt.jobs);
  auto worker = [&](int first) {
    for (std::size_t k = static_cast<std::size_t>(first); k < c.entries.size(); k += static_cast<std::size_t>(jobs))
      R.entries[k] = detail::verifyEntry(m, c, c.entries[k], opt);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker, j);
  worker(0);
  for (auto& t : pool) t.join();

  for (const auto& [name, coeffs] : c.polynomials) {
    const auto roots = polynomialRoots(coeffs);
    double minSep = 1e300;
    for (std::size_t a = 0; a < roots.size(); ++a)
      for (std::size_t b = a + 1; b < roots.size(); ++b) minSep = std::min(minSep, std::abs(roots[a] - roots[b]));
    R.catalogChecks.push_back({"simple roots of " + name, minSep > 1e-6, minSep, "min pairwise distance"});
    std::vector<bool> used(roots.size(), false);
    int matched = 0, listed = 0;
    for (const auto& e : c.entries) {
      if (e.kind != CensusEntry::Kind::PinnedRoot || e.polynomial != name) continue;
      ++listed;
      for (std::size_t k = 0; k < roots.size(); ++k)
        if (!used[k] && std::abs(roots[k] - e.root) <= 1e-10) {
          used[k] = true;
          ++matched;
          break;
        }
    }
    R.catalogChecks.push_back({"all roots of " + name + " listed", listed == static_cast<int>(roots.size()) && matched == listed,
                               static_cast<double>(matched), std::to_string(roots.size()) + " roots"});
  }

  // Galois stability: each point-like entry has a conjugate partner with equal dimensions.
  std::string unmatched;
  for (std::size_t a = 0; a < c.entries.size(); ++a) {
    const auto& ea = R.entries[a];
    if (!ea.point || !ea.analysis) continue;
    const ReducedPoint conj = ea.point->conj();
    bool found = false;
    for (std::size_t b = 0; b < c.entries.size() && !found; ++b) {
      const auto& eb = R.entries[b];
      if (eb.point && eb.analysis && detail::maxCoordinateDistance(conj, *eb.point) <= 1e-8)
        found = detail::sameDimensions(*ea.analysis, *eb.analysis);
    }
    if (!found) unmatched += ea.id + " ";
  }
  for (const auto& e : c.entries) {
    if (e.kind != CensusEntry::Kind::Family) continue;
    try {
      const auto f = FamilyParametrization::fromId(e.family);
      const Complex Y = familySampleParameters(1).front();
      const auto ra = analyze(m, expandReduced(f.evaluate(Y)), opt.tol);
      const auto rb = analyze(m, expandReduced(f.evaluate(std::conj(Y))), opt.tol);
      if (!detail::sameDimensions(ra, rb) ||
          detail::maxCoordinateDistance(f.evaluate(Y).conj(), f.evaluate(std::conj(Y))) > 1e-12)
        unmatched += e.id + " ";
    } catch (const std::exception&) {
      unmatched += e.id + " ";
    }
  }
  R.catalogChecks.push_back({"closed under conjugation", unmatched.empty(), 0, unmatched});

  for (auto& ch : publishedStringChecks(m, c)) R.catalogChecks.push_back(std::move(ch));
  return R;
}

}  // namespace pgl3glue
