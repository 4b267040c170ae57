#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact/matrix.hpp"
#include "gbsn/exact/rat.hpp"

#include <cstddef>
#include <vector>

namespace gbsn {

struct EchelonForm {
  RatMatrix R;                        // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row echelon form.
inline EchelonForm rref(const RatMatrix& M) {
  EchelonForm e{M, {}};
  RatMatrix& A = e.R;
  std::size_t row = 0;
  for (std::size_t col = 0; col < A.cols() && row < A.rows(); ++col) {
    std::size_t p = row;
    while (p < A.rows() && A(p, col).is_zero()) ++p;
    if (p == A.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(p, j), A(row, j));
    Rat inv = Rat(1) / A(row, col);
    for (std::size_t j = col; j < A.cols(); ++j) A(row, j) *= inv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, col).is_zero()) continue;
      Rat f = A(i, col);
      for (std::size_t j = col; j < A.cols(); ++j) A(i, j) -= f * A(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

inline std::size_t rat_rank(const RatMatrix& M) { return rref(M).pivots.size(); }

inline RatMatrix rat_inverse(const RatMatrix& M) {
  if (!M.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = M.rows();
  auto e = rref(M.hconcat(RatMatrix::identity(n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix();
  return e.R.submatrix_columns(n, n);
}

inline RatMatrix rat_inverse(const IntMatrix& M) { return rat_inverse(to_rat(M)); }

inline Rat rat_determinant(const RatMatrix& M) {
  if (!M.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  RatMatrix A = M;
  const std::size_t n = A.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c).is_zero()) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(p, j), A(c, j));
      det = -det;
    }
    det *= A(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (A(i, c).is_zero()) continue;
      Rat f = A(i, c) / A(c, c);
      for (std::size_t j = c; j < n; ++j) A(i, j) -= f * A(c, j);
    }
  }
  return det;
}

/// Basis of {x : M x = 0} over Q, one vector per free column.
inline std::vector<RatVector> rat_kernel(const RatMatrix& M) {
  auto e = rref(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(M.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.R(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Canonical basis of a span of vectors in Q^n: the nonzero rows of the
/// reduced row echelon form of the vectors stacked as rows. Two spans are
/// equal iff their canonical bases are equal.
inline std::vector<RatVector> canonical_span(const std::vector<RatVector>& vectors,
                                             std::size_t n) {
  RatMatrix A(vectors.size(), n);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = vectors[i][j];
  auto e = rref(A);
  std::vector<RatVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.R.row(r));
  return out;
}

/// True iff v lies in the span of the canonical basis produced above.
inline bool in_span(const std::vector<RatVector>& canonical, const RatVector& v) {
  std::vector<RatVector> extended = canonical;
  extended.push_back(v);
  return canonical_span(extended, v.size()).size() == canonical.size();
}

/// Characteristic polynomial coefficients of a square matrix, leading first,
/// via Faddeev-LeVerrier (exact over Q).
inline RatVector characteristic_polynomial(const RatMatrix& A) {
  const std::size_t n = A.rows();
  RatVector coeffs(n + 1, Rat(0));
  coeffs[0] = 1;
  RatMatrix M = RatMatrix(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    M = A * M;
    for (std::size_t i = 0; i < n; ++i) M(i, i) += coeffs[k - 1];
    RatMatrix AM = A * M;
    Rat trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += AM(i, i);
    coeffs[k] = -trace / Rat(static_cast<long long>(k));
  }
  return coeffs;
}

inline RatMatrix matrix_power(const RatMatrix& M, long long k) {
  RatMatrix base = k < 0 ? rat_inverse(M) : M;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k)
                               : static_cast<unsigned long long>(k);
  RatMatrix result = RatMatrix::identity(M.rows());
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

}  // namespace gbsn
