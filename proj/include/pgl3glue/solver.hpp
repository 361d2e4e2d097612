#pragma once

// Damped Gauss-Newton in the reduced coordinates, local inversion of the
// holonomy map, the one-parameter unipotent families of the sister manifold,
// and deterministic multi-start search.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"

namespace pgl3glue {

/// Prescribed eigenvalues for one cusp. B and B* are optional.
struct CuspTarget {
  Complex A = 1.0, Astar = 1.0;
  std::optional<Complex> B, Bstar;
};

struct SolveTarget {
  std::vector<CuspTarget> cusps;

  static SolveTarget unipotent(int ncusps) {
    SolveTarget t;
    t.cusps.assign(ncusps, CuspTarget{1.0, 1.0, Complex(1.0), Complex(1.0)});
    return t;
  }
};

struct NewtonOptions {
  int maxIter = 100;
  double tol = 1e-12;
  double clip = 1e-6;                   // minimum distance of coordinates to {0, 1}
  std::vector<bool> pinned;             // reduced unknowns held fixed
};

struct NewtonResult {
  ReducedPoint point;
  bool converged = false;
  int iterations = 0;
  double maxResidual = 0;
  std::vector<double> history;  // max-norm residual per iterate, starting point first
  std::string message;
};

/// d log z_alpha / d x_k for the expansion of a reduced point (16nu x 4nu).
inline Eigen::MatrixXcd dlogCoordinates(const ReducedPoint& r) {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(kSlotsPerTet * r.nu, 4 * r.nu);
  for (int t = 0; t < r.nu; ++t)
    for (int v = 1; v <= 4; ++v) {
      const Complex x = r.at(t, v);
      const int k = 4 * t + v - 1;
      const auto f = vertexFrame(v);
      D(CoordIndex::edge(t, v, f.c1).global(), k) = 1.0 / x;
      D(CoordIndex::edge(t, v, f.c2).global(), k) = 1.0 / (1.0 - x);
      D(CoordIndex::edge(t, v, f.c3).global(), k) = 1.0 / (x * (x - 1.0));
    }
  for (int t = 0; t < r.nu; ++t)
    for (int l = 1; l <= 4; ++l) {
      const int row = CoordIndex::face(t, l).global();
      for (int a : faceTriple(l)) D.row(row) += D.row(CoordIndex::edge(t, a, l).global());
    }
  return D;
}

/// sign * prod z^e = target, one per equation.
struct MonomialEquation {
  std::vector<int> exponents;
  int sign = 1;
  Complex target = 1.0;
};

/// f-equations plus the holonomy targets.
inline std::vector<MonomialEquation> solverEquations(const Model& m, const SolveTarget& target) {
  std::vector<MonomialEquation> eqs;
  for (const auto& row : m.system().fRows()) eqs.push_back({row.exponents, row.sign, 1.0});
  if (target.cusps.size() != m.peripheral().size()) throw InputError("target cusp count mismatch");
  for (std::size_t s = 0; s < target.cusps.size(); ++s) {
    const auto& cs = m.peripheral()[s];
    const auto& tg = target.cusps[s];
    eqs.push_back({cs.wordA.A, 1, tg.A});
    eqs.push_back({cs.wordA.Astar, 1, tg.Astar});
    if (tg.B) eqs.push_back({cs.wordB.A, 1, *tg.B});
    if (tg.Bstar) eqs.push_back({cs.wordB.Astar, 1, *tg.Bstar});
  }
  return eqs;
}

inline Eigen::VectorXcd equationResidual(const std::vector<MonomialEquation>& eqs, const Decoration& d) {
  Eigen::VectorXcd r(static_cast<Eigen::Index>(eqs.size()));
  for (std::size_t k = 0; k < eqs.size(); ++k)
    r(static_cast<Eigen::Index>(k)) = EquationSystem::evalMonomial(eqs[k].exponents, eqs[k].sign, d) - eqs[k].target;
  return r;
}

inline bool clipped(const ReducedPoint& r, double clip) {
  for (const auto& x : r.x) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return true;
    if (std::abs(x) < clip || std::abs(x - 1.0) < clip || std::abs(x) > 1.0 / clip) return true;
  }
  return false;
}

inline NewtonResult newtonSolve(const Model& m, const ReducedPoint& start, const SolveTarget& target,
                                const NewtonOptions& opt = {}) {
  for (const auto& x : start.x)
    if (nearDegenerate(x, opt.clip)) throw InputError("degenerate coordinate in start point");
  const auto eqs = solverEquations(m, target);
  const int n = 4 * start.nu;
  std::vector<int> freeIdx;
  for (int k = 0; k < n; ++k)
    if (opt.pinned.empty() || !opt.pinned[k]) freeIdx.push_back(k);

  NewtonResult res;
  res.point = start;
  Decoration d = expandReduced(res.point, 0.0);
  Eigen::VectorXcd r = equationResidual(eqs, d);
  res.history.push_back(maxResidual(r));
  for (int it = 0; it < opt.maxIter && !(res.history.back() <= opt.tol); ++it) {
    const Eigen::MatrixXcd D = dlogCoordinates(res.point);
    Eigen::MatrixXcd J(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(freeIdx.size()));
    for (std::size_t e = 0; e < eqs.size(); ++e) {
      const Complex value = r(static_cast<Eigen::Index>(e)) + eqs[e].target;
      Eigen::RowVectorXcd g = Eigen::RowVectorXcd::Zero(n);
      for (std::size_t c = 0; c < eqs[e].exponents.size(); ++c)
        if (eqs[e].exponents[c]) g += static_cast<double>(eqs[e].exponents[c]) * D.row(static_cast<Eigen::Index>(c));
      for (std::size_t j = 0; j < freeIdx.size(); ++j)
        J(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(j)) = value * g(freeIdx[j]);
    }
    const Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(-r);
    double alpha = 1.0;
    bool accepted = false;
    const double norm0 = r.norm();
    for (int k = 0; k < 40; ++k, alpha *= 0.5) {
      ReducedPoint trial = res.point;
      for (std::size_t j = 0; j < freeIdx.size(); ++j) trial.x[freeIdx[j]] += alpha * step(static_cast<Eigen::Index>(j));
      if (clipped(trial, opt.clip)) continue;
      const Decoration dt = expandReduced(trial, 0.0);
      const Eigen::VectorXcd rt = equationResidual(eqs, dt);
      if (rt.allFinite() && rt.norm() < norm0) {
        res.point = trial;
        d = dt;
        r = rt;
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    if (!accepted) {
      res.message = "degenerate step";
      break;
    }
    res.history.push_back(maxResidual(r));
  }
  res.maxResidual = res.history.back();
  res.converged = res.maxResidual <= opt.tol;
  if (!res.converged && res.message.empty()) res.message = "no convergence";
  return res;
}

struct HolTargetResult {
  NewtonResult newton;
  bool leftPositiveRegion = false;
  double holonomyError = 0;
  double gluingResidual = 0;
};

/// Solves hol = (A, A*) per cusp near a positive solution.
inline HolTargetResult solveHolTarget(const Model& m, const ReducedPoint& base, const std::vector<std::pair<Complex, Complex>>& target,
                                      const Tolerances& tol = {}, double radius = 0.05) {
  const Decoration d0 = expandReduced(base);
  requireSolution(m, d0, tol.solution);
  if (!isPositive(d0)) throw InputError("base point not positive");
  const auto h0 = hol(m.peripheral(), d0);
  if (target.size() != h0.size()) throw InputError("target cusp count mismatch");
  SolveTarget st;
  for (std::size_t s = 0; s < target.size(); ++s) {
    const double dist = std::hypot(std::abs(std::log(target[s].first / h0[s].A)),
                                   std::abs(std::log(target[s].second / h0[s].Astar)));
    if (!(dist <= radius)) throw InputError("target out of local range");
    st.cusps.push_back({target[s].first, target[s].second, std::nullopt, std::nullopt});
  }
  HolTargetResult out;
  NewtonOptions opt;
  opt.tol = tol.residual;
  out.newton = newtonSolve(m, base, st, opt);
  if (!out.newton.converged) throw ComputationError("no convergence: " + out.newton.message);
  const Decoration d = expandReduced(out.newton.point);
  const auto h = hol(m.peripheral(), d);
  for (std::size_t s = 0; s < h.size(); ++s)
    out.holonomyError = std::max({out.holonomyError, std::abs(h[s].A - target[s].first),
                                  std::abs(h[s].Astar - target[s].second)});
  out.gluingResidual = maxResidual(m.system().residual(d));
  out.leftPositiveRegion = !isPositive(d);
  if (out.holonomyError > 1e-9 || out.gluingResidual > tol.residual)
    throw ComputationError("post-check failed for holonomy target");
  return out;
}

/// The unipotent one-parameter families of the two-tetrahedron sister
/// manifold, with X = tau Y and tau a root of tau^2 = tau + 1.
class FamilyParametrization {
 public:
  enum class Kind { S1, S2 };

  FamilyParametrization(Kind kind, int sign) : kind_(kind), sign_(sign) {}

  static FamilyParametrization fromId(const std::string& id) {
    if (id == "S1+") return {Kind::S1, 1};
    if (id == "S1-") return {Kind::S1, -1};
    if (id == "S2+") return {Kind::S2, 1};
    if (id == "S2-") return {Kind::S2, -1};
    throw InputError("unknown family id " + id);
  }

  std::string id() const { return std::string(kind_ == Kind::S1 ? "S1" : "S2") + (sign_ > 0 ? "+" : "-"); }
  double tau() const { return 0.5 + sign_ * 0.5 * std::sqrt(5.0); }

  /// (z12, z21, z34, z43, w12, w21, w34, w43)
  ReducedPoint evaluate(Complex Y, double guard = kDegeneracyGuard) const {
    const Complex X = tau() * Y;
    std::array<Complex, 4> z;
    std::array<Complex, 4> w;
    if (kind_ == Kind::S1) {
      z = {(X + Y) / (X - 1.0), 1.0 + Y, (X * X + X + Y) / (X * (X - 1.0)), X};
      w = z;
    } else {
      const Complex a = X * (Y - 1.0) / (X * Y - X + Y);
      const Complex b = (X + Y - 1.0) / (Y - 1.0);
      z = {a, b, X + Y, 1.0 / Y};
      w = {b, a, 1.0 / Y, X + Y};
    }
    ReducedPoint r(2);
    for (int k = 0; k < 4; ++k) {
      r.x[k] = z[k];
      r.x[4 + k] = w[k];
    }
    for (const auto& v : r.x)
      if (nearDegenerate(v, guard)) throw InputError("excluded parameter");
    return r;
  }

 private:
  Kind kind_;
  int sign_;
};

/// 25 fixed sample parameters spread over an annulus in the Y-plane.
inline std::vector<Complex> familySampleParameters(int count = 25) {
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k) out.push_back(std::polar(0.55 + 0.09 * k, 0.35 + 0.61 * k));
  return out;
}

struct FamilySample {
  Complex Y;
  ReducedPoint point;
  double residual = 0;
  double holonomyDefect = 0;
};

inline std::vector<FamilySample> sampleFamily(const Model& m, const FamilyParametrization& f,
                                              const std::vector<Complex>& params) {
  std::vector<FamilySample> out;
  for (const auto& Y : params) {
    FamilySample s;
    s.Y = Y;
    s.point = f.evaluate(Y);
    const Decoration d = expandReduced(s.point);
    s.residual = maxResidual(m.system().residual(d));
    for (const auto& h : hol(m.peripheral(), d)) s.holonomyDefect = std::max(s.holonomyDefect, h.unipotentDefect());
    out.push_back(s);
  }
  return out;
}

struct MultiStartOptions {
  int starts = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
  double rMin = 0.2, rMax = 5.0;
  NewtonOptions newton;
  std::optional<std::pair<int, Complex>> pin;  // reduced index and value
  double dedupTol = 1e-6;
};

/// Uniform random starts in an annulus, Newton to the target, deduplicated and
/// sorted lexicographically. Deterministic for a given seed and any job count.
inline std::vector<ReducedPoint> multiStart(const Model& m, const SolveTarget& target, const MultiStartOptions& opt) {
  const int n = 4 * m.nu();
  std::vector<std::optional<ReducedPoint>> found(static_cast<std::size_t>(opt.starts));
  auto worker = [&](int first, int stride) {
    for (int s = first; s < opt.starts; s += stride) {
      std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(s));
      std::uniform_real_distribution<double> rad(opt.rMin, opt.rMax), ang(0.0, 2 * M_PI);
      ReducedPoint start(m.nu());
      for (int k = 0; k < n; ++k) {
        do start.x[k] = std::polar(rad(rng), ang(rng));
        while (nearDegenerate(start.x[k], 1e-3));
      }
      NewtonOptions no = opt.newton;
      if (opt.pin) {
        start.x[opt.pin->first] = opt.pin->second;
        no.pinned.assign(n, false);
        no.pinned[opt.pin->first] = true;
      }
      try {
        auto res = newtonSolve(m, start, target, no);
        if (res.converged && !clipped(res.point, 1e-6)) found[s] = res.point;
      } catch (const std::exception&) {
      }
    }
  };
  const int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker, j, jobs);
  worker(0, jobs);
  for (auto& th : pool) th.join();

  std::vector<ReducedPoint> uniq;
  for (const auto& f : found) {
    if (!f) continue;
    bool dup = false;
    for (const auto& u : uniq) {
      double dist = 0;
      for (int k = 0; k < n; ++k) dist = std::max(dist, std::abs(u.x[k] - f->x[k]));
      if (dist < opt.dedupTol) {
        dup = true;
        break;
      }
    }
    if (!dup) uniq.push_back(*f);
  }
  std::sort(uniq.begin(), uniq.end(), [](const ReducedPoint& a, const ReducedPoint& b) {
    for (std::size_t k = 0; k < a.x.size(); ++k) {
      if (std::abs(a.x[k].real() - b.x[k].real()) > 1e-9) return a.x[k].real() < b.x[k].real();
      if (std::abs(a.x[k].imag() - b.x[k].imag()) > 1e-9) return a.x[k].imag() < b.x[k].imag();
    }
    return false;
  });
  return uniq;
}

}  // namespace pgl3glue
