#pragma once

// Tangent spaces, rigidity and positivity at a decoration.

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "model.hpp"

namespace pgl3glue {

struct TangentA {
  Eigen::MatrixXcd full;  // Ker d_z a, dimension 12 nu
  Eigen::MatrixXcd J;     // Ker d_z a ∩ Ker d_z h, dimension 4 nu
};

inline TangentA tangentA(const EquationSystem& sys, const Decoration& d, double rankTol = kDefaultRankTol) {
  const Eigen::MatrixXcd Jac = sys.jacobianLog(d);
  const auto nA = static_cast<Eigen::Index>(sys.aRows().size());
  TangentA out;
  out.full = numericKernel(Jac.middleRows(sys.aOffset(), nA), rankTol).basis;
  out.J = numericKernel(Jac.topRows(sys.aOffset() + nA), rankTol).basis;
  return out;
}

inline double maxResidual(const Eigen::VectorXcd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

struct TangentSpace {
  Eigen::MatrixXcd basis;  // direct kernel of the full Jacobian
  RankInfo direct;         // rank data of d_z g
  int latticeDim = 0;      // dimension of (C ⊗ Λ1) ∩ A_full(z)
  RankInfo latticeInfo;
  double principalAngle = 0;
};

inline void requireSolution(const Model& m, const Decoration& d, double tol) {
  const double r = maxResidual(m.system().residual(d));
  if (!(r <= tol)) throw ComputationError("not a solution point (max residual " + std::to_string(r) + ")");
}

/// Ker d_z g computed directly and as (C ⊗ (Im p ∩ Ker F*)) ∩ A_full(z).
inline TangentSpace tangentSpace(const Model& m, const Decoration& d, const Tolerances& tol = {}) {
  requireSolution(m, d, tol.solution);
  TangentSpace out;
  const auto direct = numericKernel(m.system().jacobianLog(d), tol.rank);
  out.basis = direct.basis;
  out.direct = direct.info;
  const TangentA A = tangentA(m.system(), d, tol.rank);
  const auto viaLattice = intersectSpans(m.lambda1(), A.full, tol.rank);
  out.latticeDim = static_cast<int>(viaLattice.basis.cols());
  out.latticeInfo = viaLattice.info;
  out.principalAngle = maxPrincipalAngle(direct.basis, viaLattice.basis);
  if (out.latticeDim != direct.info.nullity() || !(out.principalAngle <= tol.principalAngle))
    throw ComputationError("kernel cross-check mismatch: direct dim " + std::to_string(direct.info.nullity()) +
                           ", lattice dim " + std::to_string(out.latticeDim) + ", angle " +
                           std::to_string(out.principalAngle));
  return out;
}

struct RigidityResult {
  bool rigid = false;
  int intersectionDim = 0;
  RankInfo info;
};

/// (C ⊗ Im(p∘F)) ∩ A_full(z) = {0}.
inline RigidityResult rigidityTest(const Model& m, const Decoration& d, const Tolerances& tol = {}) {
  requireSolution(m, d, tol.solution);
  const TangentA A = tangentA(m.system(), d, tol.rank);
  const auto inter = intersectSpans(m.imPF(), A.full, tol.rank);
  RigidityResult out;
  out.intersectionDim = static_cast<int>(inter.basis.cols());
  out.info = inter.info;
  out.rigid = out.intersectionDim == 0;
  return out;
}

/// Omega*(xi, conj(xi)) for xi in A_J(z) at a positive point.
inline Complex positivityCertificate(const EquationSystem& sys, const Decoration& d, const Eigen::VectorXcd& xi,
                                     double tol = 1e-8) {
  if (!isPositive(d)) throw InputError("point not positive");
  const Eigen::MatrixXcd Jac = sys.jacobianLog(d);
  const auto rows = sys.aOffset() + static_cast<Eigen::Index>(sys.aRows().size());
  const double scale = std::max(1.0, xi.norm());
  if ((Jac.topRows(rows) * xi).cwiseAbs().maxCoeff() > tol * scale) throw InputError("xi not in A_J");
  const Eigen::VectorXcd xibar = xi.conjugate();
  return omegaStar<Complex>(d.nu, xi, xibar);
}

/// Closed form of the certificate on A(z): -sum |xi_{v,c1}|^2 (1/conj(z_{v,c3}) - 1/z_{v,c3}).
inline Complex positivityClosedForm(const Decoration& d, const Eigen::VectorXcd& xi) {
  Complex s = 0;
  for (int t = 0; t < d.nu; ++t)
    for (int v = 1; v <= 4; ++v) {
      const auto f = vertexFrame(v);
      const Complex z = d.edge(t, v, f.c3);
      s -= std::norm(xi(CoordIndex::edge(t, v, f.c1).global())) * (1.0 / std::conj(z) - 1.0 / z);
    }
  return s;
}

inline bool isUnipotent(const std::vector<CuspHolonomy>& h, double tol) {
  for (const auto& c : h)
    if (!(c.unipotentDefect() <= tol)) return false;
  return true;
}

struct UnipotentTangent {
  int dim = 0;
  RankInfo info;
};

/// Ker d_z g ∩ Ker dlog hol.
inline UnipotentTangent unipotentTangent(const Model& m, const Decoration& d, const Tolerances& tol = {}) {
  requireSolution(m, d, tol.solution);
  if (!isUnipotent(hol(m.peripheral(), d), tol.unipotent)) throw InputError("not unipotent");
  const Eigen::MatrixXcd J = m.system().jacobianLog(d);
  const Eigen::MatrixXcd H = complexify(m.dlogHolMatrix());
  Eigen::MatrixXcd S(J.rows() + H.rows(), J.cols());
  S << J, H;
  const auto k = numericKernel(S, tol.rank);
  return {k.info.nullity(), k.info};
}

inline int unipotentTangentDim(const Model& m, const Decoration& d, const Tolerances& tol = {}) {
  return unipotentTangent(m, d, tol).dim;
}

struct AnalysisReport {
  double maxResidual = 0;
  std::vector<CuspHolonomy> holonomy;
  bool unipotent = false;
  bool positive = false;
  int dimKerDg = 0;
  int dimKerDgLattice = 0;
  double kernelAngle = 0;
  int dimUnipotentTangent = -1;  // -1 when the point is not unipotent
  bool transversal = false;
  int rigidityIntersectionDim = 0;
  std::vector<double> singularSpectrum;
  double jacobianGap = 0;
  std::vector<std::string> warnings;
  Tolerances tolerances;
};

inline AnalysisReport analyze(const Model& m, const Decoration& d, const Tolerances& tol = {}) {
  AnalysisReport R;
  R.tolerances = tol;
  R.maxResidual = maxResidual(m.system().residual(d));
  R.holonomy = hol(m.peripheral(), d);
  R.unipotent = isUnipotent(R.holonomy, tol.unipotent);
  R.positive = isPositive(d);
  const auto ts = tangentSpace(m, d, tol);
  R.dimKerDg = ts.direct.nullity();
  R.dimKerDgLattice = ts.latticeDim;
  R.kernelAngle = ts.principalAngle;
  R.singularSpectrum = ts.direct.singularValues;
  R.jacobianGap = ts.direct.gap;
  auto flag = [&](const RankInfo& info, const std::string& what) {
    if (info.indeterminate()) R.warnings.push_back("indeterminate dimension: " + what);
  };
  flag(ts.direct, "Ker d_z g");
  flag(ts.latticeInfo, "lattice kernel intersection");
  const auto rig = rigidityTest(m, d, tol);
  R.transversal = rig.rigid;
  R.rigidityIntersectionDim = rig.intersectionDim;
  flag(rig.info, "rigidity intersection");
  if (R.unipotent) {
    const auto u = unipotentTangent(m, d, tol);
    R.dimUnipotentTangent = u.dim;
    flag(u.info, "unipotent tangent");
  }
  return R;
}

}  // namespace pgl3glue
