#pragma once

// JSON views of the library's results, and a plain-text rendering of any
// report for terminal use.

#include <string>

#include "census.hpp"
#include "io.hpp"

namespace pgl3glue {

inline Json versioned(const std::string& command) { return {{"version", kVersion}, {"command", command}}; }

inline Json validationJson(const Triangulation& t) {
  Json j = versioned("validate");
  const auto edges = edgeClasses(t);
  const auto cusps = cuspLinks(t);
  j["name"] = t.name();
  j["nu"] = t.nu();
  j["edges"] = edges.size();
  j["cusps"] = cusps.size();
  Json val = Json::array();
  for (const auto& e : edges) val.push_back(e.valence());
  j["edge_valences"] = val;
  Json cs = Json::array();
  for (const auto& c : cusps)
    cs.push_back({{"triangles", c.triangles.size()}, {"vertices", c.vertexCount}, {"euler_characteristic", c.eulerCharacteristic}});
  j["cusp_links"] = cs;
  return j;
}

inline Json exponentMap(const std::vector<int>& exps, int nu) {
  Json m = Json::object();
  for (std::size_t k = 0; k < exps.size(); ++k)
    if (exps[k]) m[CoordIndex::fromGlobal(static_cast<int>(k)).name(nu)] = exps[k];
  return m;
}

inline Json equationsJson(const EquationSystem& sys) {
  Json j = versioned("equations");
  const int nu = sys.nu();
  j["nu"] = nu;
  Json cols = Json::array();
  for (int k = 0; k < sys.columns(); ++k) cols.push_back(CoordIndex::fromGlobal(k).name(nu));
  j["coordinates"] = cols;
  auto monomials = [&](const std::vector<MonomialRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"kind", rowKindName(r.kind)}, {"index", r.tag + 1}, {"sign", r.sign},
                     {"exponents", exponentMap(r.exponents, nu)}, {"text", renderRow(r, nu)}});
    return arr;
  };
  j["h"] = monomials(sys.hRows());
  Json a = Json::array();
  for (const auto& r : sys.aRows()) a.push_back({{"tet", r.tet + 1}, {"vertex", r.vertex}, {"text", renderCrossRatio(r, nu)}});
  j["a"] = a;
  j["f"] = monomials(sys.fRows());
  return j;
}

inline Json latticeJson(const Model& m) {
  Json j = versioned("lattice-report");
  const auto& L = m.maps();
  const auto& R = m.dimensions();
  auto size = [](const IntMatrix& M) { return Json::array({M.rows(), M.cols()}); };
  j["nu"] = R.nu;
  j["cusps"] = R.cusps;
  j["sizes"] = {{"F", size(L.F)}, {"p", size(L.p)}, {"Fstar", size(L.Fstar)}, {"Omega", size(L.Omega)},
                {"Q", size(L.Q)}, {"Im p cap Ker Fstar", size(R.lambda1)}, {"Im pF", size(R.imPF)}};
  Json checks = Json::array();
  for (const auto& c : R.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"expected", c.expected}, {"pass", c.pass()}});
  j["checks"] = checks;
  j["p_skew_symmetric"] = R.pSkew;
  j["Fstar_p_F_zero"] = R.FstarPFSkew;
  j["kernel_identity"] = R.kernelIdentity;
  j["torsion"] = {{"Im p cap Ker Fstar", toString(R.torsionLambda1)}, {"Im pF", toString(R.torsionImPF)}};
  j["pass"] = R.pass();
  return j;
}

inline Json holonomyJson(const Model& m, const Decoration& d) {
  Json j = versioned("holonomy");
  const int nu = m.nu();
  const auto h = hol(m.peripheral(), d);
  Json cusps = Json::array();
  for (std::size_t s = 0; s < h.size(); ++s) {
    const auto& cs = m.peripheral()[s];
    cusps.push_back({{"A", complexToJson(h[s].A)},
                     {"Astar", complexToJson(h[s].Astar)},
                     {"B", complexToJson(h[s].B)},
                     {"Bstar", complexToJson(h[s].Bstar)},
                     {"words",
                      {{"A", renderLaurent(cs.wordA.A, nu)},
                       {"Astar", renderLaurent(cs.wordA.Astar, nu)},
                       {"B", renderLaurent(cs.wordB.A, nu)},
                       {"Bstar", renderLaurent(cs.wordB.Astar, nu)}}},
                     {"paths", {{"a", renderPath(cs.a, nu)}, {"b", renderPath(cs.b, nu)}}}});
  }
  j["cusps"] = cusps;
  return j;
}

inline Json rankJson(const RankInfo& r) {
  return {{"rank", r.rank}, {"columns", r.columns}, {"gap", r.gap}};
}

inline Json analysisJson(const AnalysisReport& R) {
  Json j = Json::object();
  j["max_residual"] = R.maxResidual;
  Json h = Json::array();
  for (const auto& c : R.holonomy)
    h.push_back({{"A", complexToJson(c.A)}, {"Astar", complexToJson(c.Astar)}, {"B", complexToJson(c.B)}, {"Bstar", complexToJson(c.Bstar)}});
  j["holonomy"] = h;
  j["unipotent"] = R.unipotent;
  j["positive"] = R.positive;
  j["dim_ker_dg"] = R.dimKerDg;
  j["dim_ker_dg_lattice"] = R.dimKerDgLattice;
  j["kernel_principal_angle"] = R.kernelAngle;
  j["unipotent_tangent_dim"] = R.dimUnipotentTangent >= 0 ? Json(R.dimUnipotentTangent) : Json(nullptr);
  j["transversal"] = R.transversal;
  j["rigidity_intersection_dim"] = R.rigidityIntersectionDim;
  j["jacobian_gap"] = R.jacobianGap;
  j["singular_values"] = R.singularSpectrum;
  j["warnings"] = R.warnings;
  j["tolerances"] = {{"rank", R.tolerances.rank}, {"solution", R.tolerances.solution}, {"unipotent", R.tolerances.unipotent},
                     {"principal_angle", R.tolerances.principalAngle}};
  return j;
}

inline Json newtonJson(const NewtonResult& r) {
  return {{"converged", r.converged}, {"iterations", r.iterations}, {"max_residual", r.maxResidual},
          {"history", r.history}, {"message", r.message}};
}

inline Json checkJson(const Check& c) {
  Json j = {{"name", c.name}, {"pass", c.pass}, {"value", c.value}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Json censusJson(const CensusReport& R) {
  Json j = versioned("census");
  j["catalog"] = R.catalog;
  j["pass"] = R.pass();
  Json cc = Json::array();
  for (const auto& c : R.catalogChecks) cc.push_back(checkJson(c));
  j["catalog_checks"] = cc;
  Json entries = Json::array();
  for (const auto& e : R.entries) {
    Json ej = {{"id", e.id}, {"kind", e.kind}, {"pass", e.pass}};
    Json checks = Json::array();
    for (const auto& c : e.checks) checks.push_back(checkJson(c));
    ej["checks"] = checks;
    ej["warnings"] = e.warnings;
    if (e.point) ej["reduced"] = reducedToJson(*e.point);
    if (e.analysis) ej["analysis"] = analysisJson(*e.analysis);
    entries.push_back(ej);
  }
  j["entries"] = entries;
  return j;
}

namespace detail {

inline std::string scalarText(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::string s = writeJson(v);
  s.pop_back();
  return s;
}

inline void renderTextInto(std::string& out, const Json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  auto isLeafArray = [](const Json& a) {
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const Json& e) { return e.is_primitive(); });
  };
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const Json& c = it.value();
      if (c.is_primitive() || isLeafArray(c)) {
        out += pad + it.key() + ": " + scalarText(c) + "\n";
      } else {
        out += pad + it.key() + ":\n";
        renderTextInto(out, c, depth + 1);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_primitive() || isLeafArray(e)) {
        out += pad + "- " + scalarText(e) + "\n";
      } else {
        out += pad + "-\n";
        renderTextInto(out, e, depth + 1);
      }
    }
  } else {
    out += pad + scalarText(v) + "\n";
  }
}

}  // namespace detail

/// Indented "key: value" rendering of a report.
inline std::string renderText(const Json& v) {
  std::string out;
  detail::renderTextInto(out, v, 0);
  return out;
}

}  // namespace pgl3glue
