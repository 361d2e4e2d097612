#pragma once

// Exact integer matrices and sublattices of Z^n. Lattices are stored as
// matrices whose columns generate them.

#include <Eigen/Core>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace pgl3glue {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static IntMatrix fromEigen(const Eigen::MatrixXi& m) {
    IntMatrix out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < out.rows_; ++i)
      for (int j = 0; j < out.cols_; ++j) out(i, j) = m(i, j);
    return out;
  }

  static IntMatrix identity(int n) {
    IntMatrix out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = 1;
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  BigInt& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const BigInt& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  IntMatrix column(int j) const {
    IntMatrix out(rows_, 1);
    for (int i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
    return out;
  }

  IntMatrix columns(const std::vector<int>& idx) const {
    IntMatrix out(rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) out(i, static_cast<int>(k)) = (*this)(i, idx[k]);
    return out;
  }

  bool isZero() const {
    return std::all_of(a_.begin(), a_.end(), [](const BigInt& v) { return v == 0; });
  }

  Eigen::MatrixXd toDouble() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = static_cast<double>((*this)(i, j));
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols_ != B.rows_) throw ComputationError("matrix dimension mismatch");
    IntMatrix C(A.rows_, B.cols_);
    for (int i = 0; i < A.rows_; ++i)
      for (int k = 0; k < A.cols_; ++k) {
        const BigInt& a = A(i, k);
        if (a == 0) continue;
        for (int j = 0; j < B.cols_; ++j) C(i, j) += a * B(k, j);
      }
    return C;
  }

  friend IntMatrix operator-(const IntMatrix& A) {
    IntMatrix out = A;
    for (auto& v : out.a_) v = -v;
    return out;
  }

  friend bool operator==(const IntMatrix& A, const IntMatrix& B) {
    return A.rows_ == B.rows_ && A.cols_ == B.cols_ && A.a_ == B.a_;
  }

  void swapColumns(int p, int q) {
    if (p == q) return;
    for (int i = 0; i < rows_; ++i) std::swap((*this)(i, p), (*this)(i, q));
  }
  /// column q += k * column p
  void addColumn(int q, int p, const BigInt& k) {
    if (k == 0) return;
    for (int i = 0; i < rows_; ++i) (*this)(i, q) += k * (*this)(i, p);
  }
  void negateColumn(int p) {
    for (int i = 0; i < rows_; ++i) (*this)(i, p) = -(*this)(i, p);
  }
  void swapRows(int p, int q) {
    if (p == q) return;
    for (int j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(q, j));
  }
  void addRow(int q, int p, const BigInt& k) {
    if (k == 0) return;
    for (int j = 0; j < cols_; ++j) (*this)(q, j) += k * (*this)(p, j);
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

inline IntMatrix hstack(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw ComputationError("hstack row mismatch");
  IntMatrix out(A.rows(), A.cols() + B.cols());
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) out(i, j) = A(i, j);
    for (int j = 0; j < B.cols(); ++j) out(i, A.cols() + j) = B(i, j);
  }
  return out;
}

inline IntMatrix vstack(const IntMatrix& A, const IntMatrix& B) {
  return hstack(A.transpose(), B.transpose()).transpose();
}

/// Column echelon form over Z by unimodular column operations, applied
/// simultaneously to `M` and to a companion matrix `T` with the same column
/// count. On return the first `rank` columns of M are in echelon form (pivot
/// rows strictly increasing, pivots positive) and the rest are zero.
inline int columnEchelon(IntMatrix& M, IntMatrix* T = nullptr) {
  int col = 0;
  const int n = M.cols();
  for (int row = 0; row < M.rows() && col < n; ++row) {
    for (;;) {
      int best = -1;
      for (int j = col; j < n; ++j)
        if (M(row, j) != 0 && (best < 0 || abs(M(row, j)) < abs(M(row, best)))) best = j;
      if (best < 0) break;
      M.swapColumns(col, best);
      if (T) T->swapColumns(col, best);
      bool done = true;
      for (int j = col + 1; j < n; ++j) {
        if (M(row, j) == 0) continue;
        const BigInt q = M(row, j) / M(row, col);
        M.addColumn(j, col, -q);
        if (T) T->addColumn(j, col, -q);
        if (M(row, j) != 0) done = false;
      }
      if (done) {
        if (M(row, col) < 0) {
          M.negateColumn(col);
          if (T) T->negateColumn(col);
        }
        ++col;
        break;
      }
    }
  }
  return col;
}

inline int exactRank(const IntMatrix& M) {
  IntMatrix c = M;
  return columnEchelon(c);
}

/// Z-basis of {x in Z^n : M x = 0}.
inline IntMatrix integerKernel(const IntMatrix& M) {
  IntMatrix A = M;
  IntMatrix T = IntMatrix::identity(M.cols());
  const int r = columnEchelon(A, &T);
  std::vector<int> idx;
  for (int j = r; j < M.cols(); ++j) idx.push_back(j);
  return T.columns(idx);
}

/// Z-basis of the lattice generated by the columns of M.
inline IntMatrix latticeBasis(const IntMatrix& M) {
  IntMatrix A = M;
  const int r = columnEchelon(A);
  std::vector<int> idx(r);
  for (int j = 0; j < r; ++j) idx[j] = j;
  return A.columns(idx);
}

/// Rational span of the columns intersected with Z^n.
inline IntMatrix saturate(const IntMatrix& L) {
  const IntMatrix perp = integerKernel(L.transpose());
  if (perp.cols() == 0) return IntMatrix::identity(L.rows());
  return integerKernel(perp.transpose());
}

/// Lattice membership of every column of `v` in the lattice spanned by `L`.
inline bool latticeContains(const IntMatrix& L, const IntMatrix& v) {
  IntMatrix H = L;
  const int r = columnEchelon(H);
  for (int c = 0; c < v.cols(); ++c) {
    IntMatrix x = v.column(c);
    int row = 0;
    for (int j = 0; j < r; ++j) {
      while (row < H.rows() && H(row, j) == 0) {
        if (x(row, 0) != 0) return false;
        ++row;
      }
      const BigInt& p = H(row, j);
      if (x(row, 0) % p != 0) return false;
      const BigInt q = x(row, 0) / p;
      for (int i = 0; i < H.rows(); ++i) x(i, 0) -= q * H(i, j);
    }
    if (!x.isZero()) return false;
  }
  return true;
}

inline bool sameLattice(const IntMatrix& A, const IntMatrix& B) {
  return latticeContains(A, B) && latticeContains(B, A);
}

/// Nonzero diagonal entries of the Smith normal form.
inline std::vector<BigInt> smithDiagonal(const IntMatrix& M) {
  IntMatrix A = M;
  std::vector<BigInt> diag;
  int t = 0;
  while (t < A.rows() && t < A.cols()) {
    int pi = -1, pj = -1;
    for (int i = t; i < A.rows(); ++i)
      for (int j = t; j < A.cols(); ++j)
        if (A(i, j) != 0 && (pi < 0 || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    A.swapRows(t, pi);
    A.swapColumns(t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < A.rows(); ++i) {
        if (A(i, t) == 0) continue;
        A.addRow(i, t, -(A(i, t) / A(t, t)));
        if (A(i, t) != 0) {
          A.swapRows(t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < A.cols(); ++j) {
        if (A(t, j) == 0) continue;
        A.addColumn(j, t, -(A(t, j) / A(t, t)));
        if (A(t, j) != 0) {
          A.swapColumns(t, j);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility: the pivot must divide the remaining block.
        for (int i = t + 1; i < A.rows() && clean; ++i)
          for (int j = t + 1; j < A.cols(); ++j)
            if (A(i, j) % A(t, t) != 0) {
              A.addRow(t, i, 1);
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(A(t, t)));
    ++t;
  }
  return diag;
}

/// Product of Smith invariants above 1: the torsion of Z^n / L within its
/// saturation, i.e. the index [Sat(L) : L].
inline BigInt saturationIndex(const IntMatrix& L) {
  BigInt idx = 1;
  for (const auto& d : smithDiagonal(L)) idx *= d;
  return idx;
}

inline std::string toString(const BigInt& v) { return v.str(); }

}  // namespace pgl3glue
