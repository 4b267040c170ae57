#pragma once

#include "gbsn/exact/integer.hpp"
#include "gbsn/exact/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace gbsn {

/// Column Hermite normal form H = M * U with U unimodular.
///
/// Shape: the nonzero columns of H come first; column j has its first
/// nonzero entry (the pivot) in row p_j with p_0 < p_1 < ...; pivots are
/// positive; in pivot row p_j every entry left of the pivot lies in
/// [0, pivot) and every entry right of it is zero. This form is unique for the
/// column span of M.
///
/// Entry growth: the extended-gcd column combinations are applied row by row,
/// so entries below the current row may grow (each step multiplies by the
/// Bezout coefficients, bounded by the two entries being combined). After each
/// pivot is fixed the columns to its left are reduced modulo the pivot, which
/// keeps every pivot row bounded by its pivot; rows not yet processed are not
/// reduced. Arbitrary precision makes this safe; 12x12 inputs with entries up
/// to 10^3 stay well within a millisecond budget.
struct HermiteResult {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

inline void add_column_multiple(IntMatrix& m, std::size_t dst, std::size_t src,
                                const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += k * m(i, src);
}

inline void negate_column(IntMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

// (col_a, col_b) <- (s*col_a + t*col_b, -y*col_a + x*col_b); det = s*x + t*y.
inline void combine_columns(IntMatrix& m, std::size_t a, std::size_t b,
                            const Integer& s, const Integer& t,
                            const Integer& x, const Integer& y) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer va = m(i, a);
    Integer vb = m(i, b);
    m(i, a) = s * va + t * vb;
    m(i, b) = x * vb - y * va;
  }
}

inline HermiteResult hnf(const IntMatrix& M) {
  HermiteResult r{M, IntMatrix::identity(M.cols()), 0, {}};
  IntMatrix& H = r.H;
  IntMatrix& U = r.U;
  std::size_t pc = 0;
  for (std::size_t row = 0; row < H.rows() && pc < H.cols(); ++row) {
    for (std::size_t j = pc + 1; j < H.cols(); ++j) {
      if (H(row, j) == 0) continue;
      if (H(row, pc) == 0) {
        for (std::size_t i = 0; i < H.rows(); ++i) std::swap(H(i, pc), H(i, j));
        for (std::size_t i = 0; i < U.rows(); ++i) std::swap(U(i, pc), U(i, j));
        continue;
      }
      auto [g, s, t] = xgcd(H(row, pc), H(row, j));
      Integer x = H(row, pc) / g;
      Integer y = H(row, j) / g;
      combine_columns(H, pc, j, s, t, x, y);
      combine_columns(U, pc, j, s, t, x, y);
    }
    if (H(row, pc) == 0) continue;
    if (H(row, pc) < 0) {
      negate_column(H, pc);
      negate_column(U, pc);
    }
    for (std::size_t j = 0; j < pc; ++j) {
      Integer q = floor_div(H(row, j), H(row, pc));
      add_column_multiple(H, j, pc, -q);
      add_column_multiple(U, j, pc, -q);
    }
    r.pivot_rows.push_back(row);
    ++pc;
  }
  r.rank = pc;
  return r;
}

/// Basis (as columns) of the integer kernel {x in Z^k : M x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& M) {
  auto r = hnf(M);
  return r.U.submatrix_columns(r.rank, M.cols() - r.rank);
}

/// Smith normal form U * M * V = D with U, V unimodular and the diagonal a
/// divisibility chain of nonnegative integers.
struct SmithResult {
  std::vector<Integer> divisors;  // min(rows, cols) entries
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
};

inline SmithResult snf(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  IntMatrix D = M;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  auto swap_rows = [](IntMatrix& A, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(a, j), A(b, j));
  };
  auto swap_cols = [](IntMatrix& A, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < A.rows(); ++i) std::swap(A(i, a), A(i, b));
  };
  auto add_row = [](IntMatrix& A, std::size_t dst, std::size_t src,
                    const Integer& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < A.cols(); ++j) A(dst, j) += k * A(src, j);
  };

  const std::size_t diag = std::min(m, n);
  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero |entry| in the trailing block becomes the pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!found || abs(D(i, j)) < best)) {
            found = true;
            best = abs(D(i, j));
            pi = i;
            pj = j;
          }
      if (!found) break;
      if (pi != t) {
        swap_rows(D, pi, t);
        swap_rows(U, pi, t);
      }
      if (pj != t) {
        swap_cols(D, pj, t);
        swap_cols(V, pj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q = floor_div(D(i, t), D(t, t));
        add_row(D, i, t, -q);
        add_row(U, i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q = floor_div(D(t, j), D(t, t));
        add_column_multiple(D, j, t, -q);
        add_column_multiple(V, j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by the pivot on the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            add_row(D, t, i, 1);
            add_row(U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
  }
  SmithResult r{{}, std::move(U), std::move(V), std::move(D)};
  r.divisors.reserve(diag);
  for (std::size_t t = 0; t < diag; ++t) r.divisors.push_back(r.D(t, t));
  return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& M) {
  if (!M.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && A(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

}  // namespace gbsn
