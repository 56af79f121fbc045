#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "perverse/errors.hpp"
#include "perverse/exactla/rational.hpp"

namespace perverse {

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

// Everything below is written against an exact field Scalar: Rational, or
// the rational functions of exactla/polynomial.hpp. Comparisons are exact.

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!(m(i, j) == Scalar(0))) return false;
  return true;
}

template <class Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

template <class Derived>
bool is_skew(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i; j < m.cols(); ++j)
      if (!(m(i, j) == Scalar(0) - m(j, i))) return false;
  return true;
}

/// Reduced row echelon form with the column index of each pivot.
template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination. The pivot of each column is the first nonzero
/// entry at or below the current row, so the result is a function of the
/// input alone.
template <class Scalar>
Echelon<Scalar> reduced_row_echelon(Matrix<Scalar> m) {
  Echelon<Scalar> out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pivot = row;
    while (pivot < rows && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < cols; ++j) m(row, j) = m(row, j) * inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == row || m(i, col) == Scalar(0)) continue;
      const Scalar factor = m(i, col);
      for (Index j = col; j < cols; ++j) m(i, j) = m(i, j) - factor * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Index rank(const Matrix<Scalar>& m) {
  return reduced_row_echelon(m).rank();
}

/// Columns spanning the null space; one column per free variable, with a 1
/// in that variable's slot.
template <class Scalar>
Matrix<Scalar> kernel_basis(const Matrix<Scalar>& m) {
  const auto e = reduced_row_echelon(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Index> free;
  for (Index j = 0; j < cols; ++j)
    if (!is_pivot[static_cast<std::size_t>(j)]) free.push_back(j);

  Matrix<Scalar> k = Matrix<Scalar>::Constant(cols, static_cast<Index>(free.size()), Scalar(0));
  for (Index c = 0; c < static_cast<Index>(free.size()); ++c) {
    const Index f = free[static_cast<std::size_t>(c)];
    k(f, c) = Scalar(1);
    for (Index r = 0; r < e.rank(); ++r) k(e.pivots[static_cast<std::size_t>(r)], c) = Scalar(0) - e.reduced(r, f);
  }
  return k;
}

/// The pivot columns of m: a basis of its column space drawn from m itself.
template <class Scalar>
Matrix<Scalar> image_basis(const Matrix<Scalar>& m) {
  const auto e = reduced_row_echelon(m);
  Matrix<Scalar> out(m.rows(), e.rank());
  for (Index c = 0; c < e.rank(); ++c) out.col(c) = m.col(e.pivots[static_cast<std::size_t>(c)]);
  return out;
}

/// Some X with a * X == b, or nullopt when the system is inconsistent.
template <class Scalar>
std::optional<Matrix<Scalar>> try_solve(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::shape, "try_solve: row count mismatch");
  Matrix<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto e = reduced_row_echelon(aug);
  Matrix<Scalar> x = Matrix<Scalar>::Constant(a.cols(), b.cols(), Scalar(0));
  for (Index r = 0; r < e.rank(); ++r) {
    const Index p = e.pivots[static_cast<std::size_t>(r)];
    if (p >= a.cols()) return std::nullopt;
    x.row(p) = e.reduced.block(r, a.cols(), 1, b.cols());
  }
  return x;
}

template <class Scalar>
Matrix<Scalar> solve(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  auto x = try_solve(a, b);
  if (!x) throw Error(ErrorCode::singular, "solve: inconsistent linear system");
  return *std::move(x);
}

template <class Scalar>
Matrix<Scalar> inverse(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::shape, "inverse: matrix is not square");
  const Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug << a, Matrix<Scalar>::Identity(n, n);
  const auto e = reduced_row_echelon(aug);
  if (e.rank() < n || (n > 0 && e.pivots[static_cast<std::size_t>(n - 1)] >= n))
    throw Error(ErrorCode::singular, "inverse: matrix is singular");
  return e.reduced.block(0, n, n, n);
}

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::shape, "determinant: matrix is not square");
  const Index n = m.rows();
  Scalar det(1);
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    while (pivot < n && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = Scalar(0) - det;
    }
    det = det * m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (m(i, col) == Scalar(0)) continue;
      const Scalar factor = m(i, col) * inv;
      for (Index j = col; j < n; ++j) m(i, j) = m(i, j) - factor * m(col, j);
    }
  }
  return det;
}

template <class Scalar>
bool is_invertible(const Matrix<Scalar>& m) {
  return m.rows() == m.cols() && rank(m) == m.rows();
}

/// An (r x c) zero matrix; spelled out because Matrix::Zero needs NumTraits
/// support that the polynomial scalars only partly provide.
template <class Scalar>
Matrix<Scalar> zeros(Index rows, Index cols) {
  return Matrix<Scalar>::Constant(rows, cols, Scalar(0));
}

template <class Scalar>
Matrix<Scalar> identity(Index n) {
  Matrix<Scalar> m = zeros<Scalar>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

/// Horizontal concatenation [a | b].
template <class Scalar>
Matrix<Scalar> hcat(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::shape, "hcat: row count mismatch");
  Matrix<Scalar> out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

/// Block diagonal diag(a, b).
template <class Scalar>
Matrix<Scalar> block_diagonal(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out = zeros<Scalar>(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace perverse
