#ifndef CARNOT_RATIONAL_LINALG_HPP
#define CARNOT_RATIONAL_LINALG_HPP

#include "carnot/rational.hpp"

#include <optional>
#include <vector>

namespace carnot {

/// Exact linear algebra over any field scalar (used with Rational).
/// Plain fraction elimination; pivots are the first nonzero entries, which is
/// sound in exact arithmetic.

/// Reduces m in place to row echelon form, returns the rank.
/// If pivot_cols is non-null it receives the pivot column of each pivot row.
template <typename Scalar>
int row_echelon(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                std::vector<int>* pivot_cols = nullptr) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m(r, col) != Scalar(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    const Scalar inv = Scalar(1) / m(rank, col);
    for (int c = col; c < cols; ++c) m(rank, c) = m(rank, c) * inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m(r, col) == Scalar(0)) continue;
      const Scalar factor = m(r, col);
      for (int c = col; c < cols; ++c) m(r, c) = m(r, c) - factor * m(rank, c);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

template <typename Scalar>
int rank(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m) {
  return row_echelon(m);
}

/// Basis of the kernel of m, returned as matrix columns.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> nullspace(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m) {
  const int cols = static_cast<int>(m.cols());
  std::vector<int> pivot_cols;
  const int rk = row_echelon(m, &pivot_cols);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis(cols, cols - rk);
  basis.setConstant(Scalar(0));
  int out = 0;
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_cols) is_pivot[c] = true;
  for (int free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis(free_col, out) = Scalar(1);
    for (int r = 0; r < rk; ++r) {
      basis(pivot_cols[r], out) = -m(r, free_col);
    }
    ++out;
  }
  return basis;
}

/// True iff v lies in the column span of basis.
template <typename Scalar>
bool in_span(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& basis,
             const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> aug(basis.rows(), basis.cols() + 1);
  aug.leftCols(basis.cols()) = basis;
  aug.col(basis.cols()) = v;
  return rank<Scalar>(aug) == rank<Scalar>(basis);
}

/// Some solution of A x = b, if one exists.
template <typename Scalar>
std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> solve(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> aug(rows, cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  std::vector<int> pivot_cols;
  const int rk = row_echelon(aug, &pivot_cols);
  for (int r = 0; r < rk; ++r) {
    if (pivot_cols[r] == cols) return std::nullopt;  // inconsistent row
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(cols);
  for (int j = 0; j < cols; ++j) x(j) = Scalar(0);
  for (int r = 0; r < rk; ++r) x(pivot_cols[r]) = aug(r, cols);
  return x;
}

/// Reduced column basis of the span of the given columns.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> column_space_basis(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> t = m.transpose();
  std::vector<int> pivot_cols;
  const int rk = row_echelon(t, &pivot_cols);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> basis(m.rows(), rk);
  for (int r = 0; r < rk; ++r) basis.col(r) = t.row(r).transpose();
  return basis;
}

}  // namespace carnot

#endif  // CARNOT_RATIONAL_LINALG_HPP
