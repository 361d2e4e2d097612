// Command-line front end. Every report is JSON on stdout (or --output);
// errors are JSON on stderr with exit code 1 (computation) or 2 (input).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <pgl3glue.hpp>

using namespace pgl3glue;

namespace {

struct Config {
  double rankTol = 1e-8;
  double residualTol = 1e-12;
  double unipotentTol = 1e-9;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool pretty = false;
  std::string output;

  Tolerances tolerances() const {
    Tolerances t;
    t.rank = rankTol;
    t.residual = residualTol;
    t.unipotent = unipotentTol;
    return t;
  }
};

int emit(const Config& cfg, const Json& report) {
  const std::string text = cfg.pretty ? renderText(report) : writeJson(report, true);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw InputError("cannot write " + cfg.output);
    out << text;
  }
  return 0;
}

int fail(const std::string& type, const std::string& message, int code) {
  Json err = {{"version", kVersion}, {"error", {{"type", type}, {"message", message}}}};
  std::cerr << writeJson(err);
  return code;
}

LoadedPoint loadStart(const std::string& source, const Model& m) {
  std::ifstream probe(source);
  if (probe) return loadPoint(source, m.nu());
  const auto c = loadCatalog();
  const auto& e = c.find(source);
  if (!e.point) throw InputError("census entry " + source + " is a family; give a point file");
  ReducedPoint p = *e.point;
  if (e.kind == CensusEntry::Kind::PinnedRoot) p.x[e.pinnedIndex] = e.root;
  return {expandReduced(p), p};
}

SolveTarget parseTarget(const std::string& path, int cusps) {
  const Json j = parseJson(readFile(path), "target file");
  detail::requireObject(j, "target file");
  detail::rejectUnknownKeys(j, {"cusps"}, "target file");
  const Json& arr = detail::requireKey(j, "cusps", "target file");
  if (!arr.is_array() || static_cast<int>(arr.size()) != cusps) throw InputError("target file: need one entry per cusp");
  SolveTarget t;
  for (const auto& c : arr) {
    detail::requireObject(c, "target cusp");
    detail::rejectUnknownKeys(c, {"A", "Astar", "B", "Bstar"}, "target cusp");
    CuspTarget ct;
    ct.A = parseComplex(detail::requireKey(c, "A", "target cusp"), "A");
    ct.Astar = parseComplex(detail::requireKey(c, "Astar", "target cusp"), "Astar");
    if (c.contains("B")) ct.B = parseComplex(c["B"], "B");
    if (c.contains("Bstar")) ct.Bstar = parseComplex(c["Bstar"], "Bstar");
    for (const auto& v : {std::optional<Complex>(ct.A), std::optional<Complex>(ct.Astar), ct.B, ct.Bstar})
      if (v && *v == Complex(0)) throw InputError("targets must be nonzero");
    t.cusps.push_back(ct);
  }
  return t;
}

Json targetJson(const SolveTarget& t) {
  Json arr = Json::array();
  for (const auto& c : t.cusps) {
    Json j = {{"A", complexToJson(c.A)}, {"Astar", complexToJson(c.Astar)}};
    if (c.B) j["B"] = complexToJson(*c.B);
    if (c.Bstar) j["Bstar"] = complexToJson(*c.Bstar);
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decorated PGL(3,C) gluing equations of ideal triangulations"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--rank-tol", cfg.rankTol, "relative singular-value cutoff")->check(CLI::PositiveNumber);
  app.add_option("--residual-tol", cfg.residualTol, "Newton success threshold")->check(CLI::PositiveNumber);
  app.add_option("--unipotent-tol", cfg.unipotentTol, "unipotence threshold")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--pretty", cfg.pretty, "plain-text rendering instead of JSON");
  app.add_option("--output", cfg.output, "write the report to a file");
  app.fallthrough();

  const std::string defaultTri = defaultCatalogDir() + "/triangulation.json";
  std::string triPath = defaultTri, pointPath;

  auto* validate = app.add_subcommand("validate", "check a triangulation file");
  validate->add_option("triangulation", triPath)->capture_default_str();
  auto* equations = app.add_subcommand("equations", "print the gluing equations");
  equations->add_option("triangulation", triPath)->capture_default_str();
  auto* lattice = app.add_subcommand("lattice-report", "exact lattice dimensions and identities");
  lattice->add_option("triangulation", triPath)->capture_default_str();
  auto* holonomy = app.add_subcommand("holonomy", "peripheral eigenvalues at a point");
  holonomy->add_option("triangulation", triPath)->capture_default_str();
  holonomy->add_option("--point", pointPath)->required();
  auto* analyzeCmd = app.add_subcommand("analyze", "tangent space, rigidity and positivity at a point");
  analyzeCmd->add_option("triangulation", triPath)->capture_default_str();
  analyzeCmd->add_option("--point", pointPath)->required();

  std::string targetKind, targetFile, start;
  int maxIter = 100, starts = 200;
  double solveTol = 0;
  auto* solve = app.add_subcommand("solve", "Newton solve for prescribed boundary eigenvalues");
  solve->add_option("triangulation", triPath)->capture_default_str();
  auto* tk = solve->add_option("--target", targetKind)->check(CLI::IsMember({"unipotent"}));
  auto* tf = solve->add_option("--target-file", targetFile);
  tk->excludes(tf);
  tf->excludes(tk);
  solve->add_option("--start", start, "point file or census id; random starts when absent");
  solve->add_option("--max-iter", maxIter)->check(CLI::PositiveNumber);
  solve->add_option("--tol", solveTol)->check(CLI::PositiveNumber);
  solve->add_option("--starts", starts, "number of random starts")->check(CLI::PositiveNumber);

  std::string catalogName;
  bool verify = false;
  auto* census = app.add_subcommand("census", "shipped solution catalogs");
  census->add_option("name", catalogName)->required()->check(CLI::IsMember({"sister"}));
  census->add_flag("--verify", verify, "verify every entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    const Tolerances tol = cfg.tolerances();
    if (*census) {
      const auto c = loadCatalog(defaultCatalogDir(catalogName));
      if (!verify) {
        Json j = versioned("census");
        j["catalog"] = c.name;
        Json ids = Json::array();
        for (const auto& e : c.entries) ids.push_back({{"id", e.id}, {"kind", kindName(e.kind)}, {"provenance", e.provenance}});
        j["entries"] = ids;
        return emit(cfg, j);
      }
      CensusOptions opt;
      opt.tol = tol;
      opt.jobs = cfg.jobs;
      const auto R = verifyCatalog(c, opt);
      emit(cfg, censusJson(R));
      return R.pass() ? 0 : fail("computation", "census verification failed", 1);
    }

    const Triangulation t = loadTriangulation(triPath);
    if (*validate) return emit(cfg, validationJson(t));
    if (*equations) return emit(cfg, equationsJson(EquationSystem(t)));

    const Model m(t);
    if (*lattice) {
      emit(cfg, latticeJson(m));
      return m.dimensions().pass() ? 0 : fail("computation", "lattice identity violated", 1);
    }
    if (*holonomy) return emit(cfg, holonomyJson(m, loadPoint(pointPath, m.nu()).decoration));
    if (*analyzeCmd) {
      const Decoration d = loadPoint(pointPath, m.nu()).decoration;
      Json j = versioned("analyze");
      j["report"] = analysisJson(analyze(m, d, tol));
      j["points"] = decorationToJson(d);
      return emit(cfg, j);
    }
    if (*solve) {
      const SolveTarget target = targetFile.empty() ? SolveTarget::unipotent(m.cuspCount()) : parseTarget(targetFile, m.cuspCount());
      NewtonOptions no;
      no.maxIter = maxIter;
      no.tol = solveTol > 0 ? solveTol : tol.residual;
      Json j = versioned("solve");
      j["target"] = targetJson(target);
      if (!start.empty()) {
        const LoadedPoint p = loadStart(start, m);
        const ReducedPoint r = p.reduced ? *p.reduced : reduce(p.decoration);
        const auto res = newtonSolve(m, r, target, no);
        j["newton"] = newtonJson(res);
        j["reduced"] = reducedToJson(res.point);
        emit(cfg, j);
        return res.converged ? 0 : fail("computation", res.message, 1);
      }
      MultiStartOptions mo;
      mo.starts = starts;
      mo.seed = cfg.seed;
      mo.jobs = cfg.jobs;
      mo.newton = no;
      const auto found = multiStart(m, target, mo);
      j["seed"] = cfg.seed;
      j["starts"] = starts;
      Json sols = Json::array();
      for (const auto& r : found) sols.push_back({{"reduced", reducedToJson(r)}});
      j["solutions"] = sols;
      if (!found.empty()) j["reduced"] = reducedToJson(found.front());
      emit(cfg, j);
      return found.empty() ? fail("computation", "no convergence from any start", 1) : 0;
    }
  } catch (const InputError& e) {
    return fail("input", e.what(), 2);
  } catch (const ComputationError& e) {
    return fail("computation", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("computation", e.what(), 1);
  }
  return 0;
}
