#pragma once

// JSON formats: triangulation files, point files (full or reduced form), and
// a deterministic writer printing every float with 17 significant digits.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>

#include "decoration.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "triangulation.hpp"

namespace pgl3glue {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON, turning syntax errors into InputError with line and column.
inline Json parseJson(const std::string& text, const std::string& what = "input") {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("syntax error in " + what + " at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + " (byte " + std::to_string(e.byte) + ")");
  }
}

namespace detail {

inline void requireObject(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
}

inline void rejectUnknownKeys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw InputError(where + ": unknown key \"" + it.key() + "\"");
}

inline const Json& requireKey(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing key \"" + key + "\"");
  return *it;
}

inline int requireInt(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = requireKey(j, key, where);
  if (!v.is_number_integer()) throw InputError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

inline int parseVertexKey(const std::string& s, const std::string& where) {
  if (s.size() != 1 || s[0] < '1' || s[0] > '4') throw InputError(where + ": bad vertex label \"" + s + "\"");
  return s[0] - '0';
}

}  // namespace detail

/// Structural parse plus full validation (orientation, edges, cusps).
inline Triangulation parseTriangulation(const std::string& text) {
  const Json j = parseJson(text, "triangulation");
  detail::requireObject(j, "triangulation");
  detail::rejectUnknownKeys(j, {"name", "tetrahedra", "gluings"}, "triangulation");
  std::string name;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw InputError("triangulation: \"name\" must be a string");
    name = it->get<std::string>();
  }
  const int nu = detail::requireInt(j, "tetrahedra", "triangulation");
  if (nu <= 0) throw InputError("triangulation: \"tetrahedra\" must be positive");
  const Json& gl = detail::requireKey(j, "gluings", "triangulation");
  if (!gl.is_array()) throw InputError("triangulation: \"gluings\" must be an array");
  std::vector<FaceGluing> gluings;
  int idx = 0;
  for (const auto& g : gl) {
    const std::string where = "gluing " + std::to_string(++idx);
    detail::requireObject(g, where);
    detail::rejectUnknownKeys(g, {"tet", "face", "to_tet", "to_face", "vertex_map"}, where);
    FaceGluing fg;
    fg.tet = detail::requireInt(g, "tet", where) - 1;
    fg.face = detail::requireInt(g, "face", where);
    fg.toTet = detail::requireInt(g, "to_tet", where) - 1;
    fg.toFace = detail::requireInt(g, "to_face", where);
    if (fg.tet < 0 || fg.tet >= nu || fg.toTet < 0 || fg.toTet >= nu)
      throw InputError(where + ": tetrahedron index out of range");
    if (fg.face < 1 || fg.face > 4 || fg.toFace < 1 || fg.toFace > 4)
      throw InputError(where + ": face label out of range");
    const Json& vm = detail::requireKey(g, "vertex_map", where);
    detail::requireObject(vm, where + " vertex_map");
    if (vm.size() != 3) throw InputError(where + ": vertex_map needs 3 entries");
    std::array<std::int8_t, 4> img{};
    img[fg.face - 1] = static_cast<std::int8_t>(fg.toFace);
    for (auto it = vm.begin(); it != vm.end(); ++it) {
      const int a = detail::parseVertexKey(it.key(), where);
      if (a == fg.face) throw InputError(where + ": vertex_map key is the opposite vertex of the face");
      if (!it->is_number_integer()) throw InputError(where + ": vertex_map values must be integers");
      const int b = it->get<int>();
      if (b < 1 || b > 4 || b == fg.toFace) throw InputError(where + ": vertex_map value not on the target face");
      img[a - 1] = static_cast<std::int8_t>(b);
    }
    fg.vertexMap = Perm4(img);
    if (!fg.vertexMap.isBijection()) throw InputError(where + ": vertex_map is not a bijection");
    gluings.push_back(fg);
  }
  Triangulation t = Triangulation::fromGluings(name, nu, std::move(gluings));
  t.validate();
  return t;
}

inline Triangulation loadTriangulation(const std::string& path) { return parseTriangulation(readFile(path)); }

inline Json triangulationToJson(const Triangulation& t) {
  Json gl = Json::array();
  for (const auto& g : t.gluings()) {
    Json vm = Json::object();
    for (int v = 1; v <= 4; ++v)
      if (v != g.face) vm[std::to_string(v)] = g.vertexMap(v);
    gl.push_back({{"tet", g.tet + 1}, {"face", g.face}, {"to_tet", g.toTet + 1}, {"to_face", g.toFace}, {"vertex_map", vm}});
  }
  return {{"name", t.name()}, {"tetrahedra", t.nu()}, {"gluings", gl}};
}

/// A complex value given as [re, im], a plain number, or an expression string.
inline Complex parseComplex(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return evaluateExpression(v.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InputError(where + ": expected [re, im], a number or an expression string");
}

inline Json complexToJson(Complex z) { return Json::array({z.real(), z.imag()}); }

struct LoadedPoint {
  Decoration decoration;
  std::optional<ReducedPoint> reduced;
};

inline ReducedPoint parseReduced(const Json& arr, int nu) {
  if (!arr.is_array()) throw InputError("\"reduced\" must be an array");
  ReducedPoint r(nu);
  std::vector<bool> seen(nu, false);
  for (const auto& e : arr) {
    detail::requireObject(e, "reduced entry");
    detail::rejectUnknownKeys(e, {"tet", "x"}, "reduced entry");
    const int t = detail::requireInt(e, "tet", "reduced entry") - 1;
    if (t < 0 || t >= nu || seen[t]) throw InputError("reduced entry: bad or repeated tet index");
    seen[t] = true;
    const Json& x = detail::requireKey(e, "x", "reduced entry");
    detail::requireObject(x, "reduced entry x");
    if (x.size() != 4) throw InputError("reduced entry: need 4 values per tet");
    for (auto it = x.begin(); it != x.end(); ++it) {
      const int v = detail::parseVertexKey(it.key(), "reduced entry");
      r.at(t, v) = parseComplex(*it, "tet " + std::to_string(t + 1) + " vertex " + it.key());
    }
  }
  for (bool s : seen)
    if (!s) throw InputError("reduced point misses a tetrahedron");
  return r;
}

/// Face keys are the canonical triples "123", "134", "142", "324".
inline Decoration parseFull(const Json& arr, int nu) {
  if (!arr.is_array()) throw InputError("\"points\" must be an array");
  Decoration d(nu);
  std::vector<bool> seen(nu, false);
  for (const auto& e : arr) {
    detail::requireObject(e, "point entry");
    detail::rejectUnknownKeys(e, {"tet", "z"}, "point entry");
    const int t = detail::requireInt(e, "tet", "point entry") - 1;
    if (t < 0 || t >= nu || seen[t]) throw InputError("point entry: bad or repeated tet index");
    seen[t] = true;
    const Json& z = detail::requireKey(e, "z", "point entry");
    detail::requireObject(z, "point entry z");
    std::set<int> edgesSeen, facesSeen;
    for (auto it = z.begin(); it != z.end(); ++it) {
      const std::string& k = it.key();
      const std::string where = "tet " + std::to_string(t + 1) + " coordinate " + k;
      if (k.size() == 2) {
        const int i = detail::parseVertexKey(k.substr(0, 1), where), j = detail::parseVertexKey(k.substr(1, 1), where);
        if (i == j) throw InputError(where + ": repeated vertex");
        d.edge(t, i, j) = parseComplex(*it, where);
        edgesSeen.insert(edgeSlot(i, j));
      } else if (k.size() == 3) {
        int l = 0;
        for (int c = 1; c <= 4; ++c) {
          const auto tr = faceTriple(c);
          if (k == std::to_string(tr[0]) + std::to_string(tr[1]) + std::to_string(tr[2])) l = c;
        }
        if (!l) throw InputError(where + ": not a canonical face triple");
        d.face(t, l) = parseComplex(*it, where);
        facesSeen.insert(l);
      } else {
        throw InputError(where + ": unknown coordinate key");
      }
    }
    if (edgesSeen.size() != 12) throw InputError("tet " + std::to_string(t + 1) + ": all 12 edge coordinates required");
    for (int l = 1; l <= 4; ++l)
      if (!facesSeen.count(l)) {
        const auto [a, b, c] = faceTriple(l);
        d.face(t, l) = -d.edge(t, a, l) * d.edge(t, b, l) * d.edge(t, c, l);
      }
  }
  for (bool s : seen)
    if (!s) throw InputError("point misses a tetrahedron");
  for (const auto& v : d.z)
    if (v == Complex(0) || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("coordinate values must be finite and nonzero");
  return d;
}

/// Reads "points" (full form) when present, else "reduced". Other top-level
/// keys are ignored so that reports can be fed back as input.
inline LoadedPoint parsePoint(const std::string& text, int nu) {
  const Json j = parseJson(text, "point file");
  detail::requireObject(j, "point file");
  LoadedPoint out;
  if (auto it = j.find("points"); it != j.end()) {
    out.decoration = parseFull(*it, nu);
    return out;
  }
  if (auto it = j.find("reduced"); it != j.end()) {
    out.reduced = parseReduced(*it, nu);
    out.decoration = expandReduced(*out.reduced);
    return out;
  }
  throw InputError("point file needs \"points\" or \"reduced\"");
}

inline LoadedPoint loadPoint(const std::string& path, int nu) { return parsePoint(readFile(path), nu); }

inline Json reducedToJson(const ReducedPoint& r) {
  Json arr = Json::array();
  for (int t = 0; t < r.nu; ++t) {
    Json x = Json::object();
    for (int v = 1; v <= 4; ++v) x[std::to_string(v)] = complexToJson(r.at(t, v));
    arr.push_back({{"tet", t + 1}, {"x", x}});
  }
  return arr;
}

inline Json decorationToJson(const Decoration& d) {
  Json arr = Json::array();
  for (int t = 0; t < d.nu; ++t) {
    Json z = Json::object();
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j)
        if (i != j) z[std::to_string(i) + std::to_string(j)] = complexToJson(d.edge(t, i, j));
    for (int l = 1; l <= 4; ++l) {
      const auto tr = faceTriple(l);
      z[std::to_string(tr[0]) + std::to_string(tr[1]) + std::to_string(tr[2])] = complexToJson(d.face(t, l));
    }
    arr.push_back({{"tet", t + 1}, {"z", z}});
  }
  return arr;
}

namespace detail {

inline void writeString(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

inline void writeNumber(std::string& out, const Json& v) {
  if (v.is_number_integer()) {
    out += v.dump();
    return;
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    out += std::isnan(x) ? "\"nan\"" : (x > 0 ? "\"inf\"" : "\"-inf\"");
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

inline void writeValue(std::string& out, const Json& v, bool pretty, int depth) {
  const auto newline = [&](int d) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(2 * d), ' ');
  };
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ',';
      first = false;
      newline(depth + 1);
      writeString(out, it.key());
      out += pretty ? ": " : ":";
      writeValue(out, it.value(), pretty, depth + 1);
    }
    newline(depth);
    out += '}';
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
    out += '[';
    bool first = true;
    for (const auto& e : v) {
      if (!first) out += pretty && flat ? ", " : ",";
      first = false;
      if (!flat) newline(depth + 1);
      writeValue(out, e, pretty, depth + 1);
    }
    if (!flat) newline(depth);
    out += ']';
  } else if (v.is_number()) {
    writeNumber(out, v);
  } else if (v.is_string()) {
    writeString(out, v.get<std::string>());
  } else {
    out += v.dump();
  }
}

}  // namespace detail

/// Deterministic serialization: keys in insertion order, floats as %.17g.
inline std::string writeJson(const Json& v, bool pretty = false) {
  std::string out;
  detail::writeValue(out, v, pretty, 0);
  out += '\n';
  return out;
}

}  // namespace pgl3glue
