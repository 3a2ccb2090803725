// Exact Gaussian elimination over a field scalar (Rational in practice).
#pragma once

#include "ucoh/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ucoh {

/// Reduced row echelon form, pivoting only in the first `pivot_cols` columns
/// (all columns if negative). Returns the pivot columns in row order.
template <class Scalar>
std::vector<Eigen::Index> rref_in_place(Matrix<Scalar>& m, Eigen::Index pivot_cols = -1) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = pivot_cols < 0 ? m.cols() : pivot_cols;
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(r, j) != 0) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Scalar factor = m(i, c);
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Scalar>
Eigen::Index rank(Matrix<Scalar> m) {
  return static_cast<Eigen::Index>(rref_in_place(m).size());
}

/// Basis of {x : a x = 0}, one column per free variable. Each column has a 1 at
/// its free variable and 0 at the other free variables.
template <class Scalar>
Matrix<Scalar> nullspace(const Matrix<Scalar>& a) {
  Matrix<Scalar> m = a;
  const auto pivots = rref_in_place(m);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto fc = free_cols[k];
    const auto col = static_cast<Eigen::Index>(k);
    basis(fc, col) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], col) = -m(static_cast<Eigen::Index>(r), fc);
  }
  return basis;
}

template <class Scalar>
struct AffineSolution {
  bool feasible = false;
  /// A particular solution (free variables set to zero) when feasible.
  Vector<Scalar> solution;
  /// When infeasible: y with y^T a = 0 and y^T b != 0.
  Vector<Scalar> certificate;
  /// Dimension of the solution set when feasible.
  Eigen::Index kernel_dim = 0;
};

/// Solves a x = b exactly, returning a Farkas-style certificate on failure.
template <class Scalar>
AffineSolution<Scalar> solve_affine(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Matrix<Scalar> aug = Matrix<Scalar>::Zero(m, n + 1 + m);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  for (Eigen::Index i = 0; i < m; ++i) aug(i, n + 1 + i) = Scalar(1);
  const auto pivots = rref_in_place(aug, n);
  AffineSolution<Scalar> out;
  for (Eigen::Index r = static_cast<Eigen::Index>(pivots.size()); r < m; ++r) {
    if (aug(r, n) != 0) {
      out.certificate = aug.row(r).tail(m).transpose();
      return out;
    }
  }
  out.feasible = true;
  out.solution = Vector<Scalar>::Zero(n);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    out.solution(pivots[r]) = aug(static_cast<Eigen::Index>(r), n);
  out.kernel_dim = n - static_cast<Eigen::Index>(pivots.size());
  return out;
}

/// Scales a rational vector to coprime integers with positive leading entry.
VectorQ primitive_integer(const VectorQ& v);

}  // namespace ucoh
