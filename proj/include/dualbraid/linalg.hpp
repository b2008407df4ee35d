#pragma once

// Exact dense linear algebra over a field scalar (Cyclotomic, Rational).
//
// Everything here is Gaussian elimination with the first nonzero entry of the
// current column as pivot, so results and intermediate traces are
// reproducible. No pivot ever depends on magnitude.

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "dualbraid/cyclotomic.hpp"

namespace dualbraid {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CycMatrix = Matrix<Cyclotomic>;
using CycVector = Vector<Cyclotomic>;

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;          // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form.
template <class Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  std::vector<Eigen::Index> pivots;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = row;
    while (pivot < rows && is_zero(m(pivot, col))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < cols; ++j) m(row, j) = m(row, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Scalar factor = m(i, col);
      for (Eigen::Index j = col; j < cols; ++j) {
        if (!is_zero(m(row, j))) m(i, j) -= factor * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination only.
template <class Derived>
int rank(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = row;
    while (pivot < rows && is_zero(m(pivot, col))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index i = row + 1; i < rows; ++i) {
      if (is_zero(m(i, col))) continue;
      const Scalar factor = m(i, col) * inv;
      for (Eigen::Index j = col + 1; j < cols; ++j) {
        if (!is_zero(m(row, j))) m(i, j) -= factor * m(row, j);
      }
    }
    ++row;
  }
  return static_cast<int>(row);
}

/// Basis of the right kernel {v : m v = 0}, one vector per free column.
template <class Derived>
std::vector<Vector<typename Derived::Scalar>> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_echelon(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector<Scalar>> basis;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector<Scalar> v = Vector<Scalar>::Constant(cols, Scalar(0L));
    v(free) = Scalar(1L);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      v(ech.pivots[r]) = -ech.reduced(static_cast<Eigen::Index>(r), free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Exact inverse; throws SingularMatrixError.
template <class Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols()) throw SingularMatrixError("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  Matrix<Scalar> augmented(n, 2 * n);
  augmented.leftCols(n) = m;
  augmented.rightCols(n) = Matrix<Scalar>::Constant(n, n, Scalar(0L));
  for (Eigen::Index i = 0; i < n; ++i) augmented(i, n + i) = Scalar(1L);
  const auto ech = row_echelon(augmented);
  if (static_cast<Eigen::Index>(ech.pivots.size()) < n || ech.pivots[static_cast<std::size_t>(n - 1)] != n - 1) {
    throw SingularMatrixError("matrix is singular");
  }
  return ech.reduced.rightCols(n);
}

/// Basis of ker(m - lambda I); empty when lambda is not an eigenvalue.
template <class Derived>
std::vector<Vector<typename Derived::Scalar>> eigenspace(const Eigen::MatrixBase<Derived>& m,
                                                         const typename Derived::Scalar& lambda) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> shifted = m;
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
  return kernel(shifted);
}

template <class Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  Matrix<Scalar> id = Matrix<Scalar>::Constant(n, n, Scalar(0L));
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = Scalar(1L);
  return id;
}

/// Coefficient-wise product without Eigen's blocked kernel (cheaper for exact scalars).
template <class A, class B>
Matrix<typename A::Scalar> multiply(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  Matrix<Scalar> out = Matrix<Scalar>::Constant(a.rows(), b.cols(), Scalar(0L));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Scalar& x = a(i, k);
      if (is_zero(x)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        if (!is_zero(b(k, j))) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

/// Put every entry into Q(zeta_conductor).
CycMatrix embed(const CycMatrix& m, int conductor);

/// Least conductor containing every entry.
int common_conductor(const CycMatrix& m);

}  // namespace dualbraid
