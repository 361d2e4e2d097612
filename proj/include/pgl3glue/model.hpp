#pragma once

// Everything derived from a triangulation alone, computed once.

#include <Eigen/Core>

#include "gluing.hpp"
#include "lattice.hpp"
#include "numeric.hpp"
#include "peripheral.hpp"
#include "triangulation.hpp"

namespace pgl3glue {

struct Tolerances {
  double rank = 1e-8;        // relative singular-value cutoff
  double residual = 1e-12;   // Newton success
  double unipotent = 1e-9;   // |eigenvalue - 1|
  double solution = 1e-10;   // gluing residual for analysis preconditions
  double principalAngle = 1e-7;
};

class Model {
 public:
  explicit Model(Triangulation t)
      : tri_(std::move(t)),
        sys_(tri_),
        cusps_(cuspLinks(tri_)),
        periph_(peripheralSystems(tri_, cusps_)),
        maps_(buildLatticeMaps(tri_)),
        dims_(dimensionReport(maps_, static_cast<int>(cusps_.size()))) {
    lambda1_ = complexify(dims_.lambda1.toDouble());
    imPF_ = complexify(dims_.imPF.toDouble());
    dlogHol_ = dlogHol(periph_, tri_.nu());
  }

  const Triangulation& triangulation() const { return tri_; }
  const EquationSystem& system() const { return sys_; }
  const std::vector<CuspSurface>& cusps() const { return cusps_; }
  const std::vector<CuspSystem>& peripheral() const { return periph_; }
  const LatticeMaps& maps() const { return maps_; }
  const DimensionReport& dimensions() const { return dims_; }
  int nu() const { return tri_.nu(); }
  int cuspCount() const { return static_cast<int>(cusps_.size()); }

  /// Complexified Z-basis of Im p ∩ Ker F*.
  const Eigen::MatrixXcd& lambda1() const { return lambda1_; }
  /// Complexified Z-basis of Im(p∘F).
  const Eigen::MatrixXcd& imPF() const { return imPF_; }
  const Eigen::MatrixXi& dlogHolMatrix() const { return dlogHol_; }

 private:
  Triangulation tri_;
  EquationSystem sys_;
  std::vector<CuspSurface> cusps_;
  std::vector<CuspSystem> periph_;
  LatticeMaps maps_;
  DimensionReport dims_;
  Eigen::MatrixXcd lambda1_, imPF_;
  Eigen::MatrixXi dlogHol_;
};

}  // namespace pgl3glue
