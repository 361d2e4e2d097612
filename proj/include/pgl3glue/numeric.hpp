#pragma once

// Numerical rank, kernels and subspace comparisons over C.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace pgl3glue {

constexpr double kDefaultRankTol = 1e-8;
constexpr double kGapThreshold = 1e3;

/// Numerical rank with audit data. Singular values below relTol * sigma_max
/// count as zero. `gap` is the ratio of the smallest kept to the largest
/// dropped singular value (infinite when nothing below the threshold is
/// present, including the structural zeros of a wide matrix).
struct RankInfo {
  int rank = 0;
  int columns = 0;
  std::vector<double> singularValues;
  double gap = std::numeric_limits<double>::infinity();

  int nullity() const { return columns - rank; }
  bool indeterminate() const { return gap < kGapThreshold; }
};

struct KernelResult {
  Eigen::MatrixXcd basis;  // orthonormal columns
  RankInfo info;
};

inline KernelResult numericKernel(const Eigen::MatrixXcd& A, double relTol = kDefaultRankTol) {
  KernelResult out;
  const Eigen::Index n = A.cols();
  out.info.columns = static_cast<int>(n);
  if (A.rows() == 0) {
    out.basis = Eigen::MatrixXcd::Identity(n, n);
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  out.info.singularValues.assign(s.data(), s.data() + s.size());
  const double smax = s.size() ? s(0) : 0.0;
  int r = 0;
  if (smax > 0)
    while (r < s.size() && s(r) > relTol * smax) ++r;
  out.info.rank = r;
  if (r > 0 && r < s.size()) out.info.gap = s(r) > 0 ? s(r - 1) / s(r) : std::numeric_limits<double>::infinity();
  out.basis = svd.matrixV().rightCols(n - r);
  return out;
}

inline RankInfo numericRank(const Eigen::MatrixXcd& A, double relTol = kDefaultRankTol) {
  return numericKernel(A, relTol).info;
}

/// Orthonormal basis of the column span.
inline Eigen::MatrixXcd orthonormalColumns(const Eigen::MatrixXcd& U, double relTol = kDefaultRankTol) {
  if (U.cols() == 0) return U;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(U, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() && s(0) > 0)
    while (r < s.size() && s(r) > relTol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

/// Intersection of two column spans, from the kernel of [U | -V]. Returns an
/// orthonormal basis together with the rank data of the stacked matrix.
inline KernelResult intersectSpans(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V,
                                   double relTol = kDefaultRankTol) {
  const Eigen::MatrixXcd Uo = orthonormalColumns(U, relTol);
  const Eigen::MatrixXcd Vo = orthonormalColumns(V, relTol);
  Eigen::MatrixXcd M(Uo.rows(), Uo.cols() + Vo.cols());
  M << Uo, -Vo;
  KernelResult k = numericKernel(M, relTol);
  KernelResult out;
  out.info = k.info;
  out.basis = orthonormalColumns(Uo * k.basis.topRows(Uo.cols()), relTol);
  if (out.basis.cols() != k.basis.cols()) out.basis = Uo * k.basis.topRows(Uo.cols());
  return out;
}

/// Largest principal angle between two subspaces given by orthonormal bases of
/// equal dimension (pi/2 when the dimensions differ).
inline double maxPrincipalAngle(const Eigen::MatrixXcd& Q1, const Eigen::MatrixXcd& Q2) {
  if (Q1.cols() != Q2.cols()) return M_PI / 2;
  if (Q1.cols() == 0) return 0;
  const Eigen::MatrixXcd R = Q2 - Q1 * (Q1.adjoint() * Q2);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
  const double s = std::min(1.0, svd.singularValues()(0));
  return std::asin(s);
}

/// Complexified integer basis.
template <typename IntMatrix>
Eigen::MatrixXcd complexify(const IntMatrix& M) {
  return M.template cast<double>().template cast<std::complex<double>>();
}

}  // namespace pgl3glue
