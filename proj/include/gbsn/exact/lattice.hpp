#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact/matrix.hpp"
#include "gbsn/exact/normal_form.hpp"
#include "gbsn/exact/rational_linalg.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace gbsn {

/// Sublattice of Z^n stored as the nonzero columns of its column Hermite
/// normal form, so structural equality is lattice equality.
class Lattice {
 public:
  /// The zero lattice in Z^n.
  explicit Lattice(std::size_t ambient_rank)
      : ambient_(ambient_rank), basis_(ambient_rank, 0) {}

  /// Lattice spanned by the columns of `generators` (any number of columns,
  /// dependent or not).
  static Lattice from_generators(const IntMatrix& generators) {
    Lattice L(generators.rows());
    auto h = hnf(generators);
    L.basis_ = h.H.submatrix_columns(0, h.rank);
    L.pivot_rows_ = std::move(h.pivot_rows);
    return L;
  }

  static Lattice full(std::size_t n) {
    return from_generators(IntMatrix::identity(n));
  }

  /// k * Z^n.
  static Lattice scaled(std::size_t n, const Integer& k) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = k;
    return from_generators(m);
  }

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  bool is_full_rank() const { return rank() == ambient_; }
  const IntMatrix& basis() const { return basis_; }

  /// [Z^n : L] for full-rank lattices (product of the HNF pivots).
  Integer index() const {
    if (!is_full_rank()) throw Error("index of a lattice that is not full rank");
    Integer d = 1;
    for (std::size_t j = 0; j < rank(); ++j) d *= basis_(pivot_rows_[j], j);
    return d;
  }

  /// Coordinates c with basis * c == v, when v lies in the lattice.
  std::optional<IntVector> solve(const IntVector& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("lattice_solve ambient rank");
    IntVector residual = v;
    IntVector coords(rank());
    std::size_t next_row = 0;
    for (std::size_t j = 0; j < rank(); ++j) {
      const std::size_t p = pivot_rows_[j];
      for (; next_row < p; ++next_row)
        if (residual[next_row] != 0) return std::nullopt;
      const Integer& pivot = basis_(p, j);
      if (residual[p] % pivot != 0) return std::nullopt;
      coords[j] = residual[p] / pivot;
      if (coords[j] != 0)
        for (std::size_t i = p; i < ambient_; ++i) residual[i] -= coords[j] * basis_(i, j);
      next_row = p + 1;
    }
    for (; next_row < ambient_; ++next_row)
      if (residual[next_row] != 0) return std::nullopt;
    return coords;
  }

  bool contains(const IntVector& v) const { return solve(v).has_value(); }

  bool contains(const Lattice& other) const {
    for (std::size_t j = 0; j < other.rank(); ++j)
      if (!contains(other.basis_.column(j))) return false;
    return true;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

 private:
  std::size_t ambient_;
  IntMatrix basis_;
  std::vector<std::size_t> pivot_rows_;
};

inline bool lattice_member(const Lattice& L, const IntVector& v) {
  return L.contains(v);
}

inline std::optional<IntVector> lattice_solve(const Lattice& L, const IntVector& v) {
  return L.solve(v);
}

/// Some integer x with A x = v, if one exists.
inline std::optional<IntVector> integer_solve(const IntMatrix& A, const IntVector& v) {
  if (v.size() != A.rows()) throw DimensionMismatch("integer_solve shapes");
  auto h = hnf(A);
  Lattice L = Lattice::from_generators(A);
  auto c = L.solve(v);
  if (!c) return std::nullopt;
  IntVector x(A.cols(), Integer(0));
  for (std::size_t j = 0; j < h.rank; ++j)
    for (std::size_t i = 0; i < A.cols(); ++i) x[i] += h.U(i, j) * (*c)[j];
  return x;
}

/// {v : v in L1 and v in L2}, via the integer kernel of [B1 | -B2].
inline Lattice lattice_intersect(const Lattice& L1, const Lattice& L2) {
  if (L1.ambient_rank() != L2.ambient_rank())
    throw DimensionMismatch("lattice_intersect ambient ranks differ");
  const std::size_t n = L1.ambient_rank();
  if (L1.rank() == 0 || L2.rank() == 0) return Lattice(n);
  IntMatrix neg = L2.basis();
  for (std::size_t i = 0; i < neg.rows(); ++i)
    for (std::size_t j = 0; j < neg.cols(); ++j) neg(i, j) = -neg(i, j);
  IntMatrix kernel = integer_kernel(L1.basis().hconcat(neg));
  IntMatrix coeffs = kernel.submatrix_rows(0, L1.rank());
  return Lattice::from_generators(L1.basis() * coeffs);
}

/// {x in domain : map * x in target} for a rational matrix `map`.
inline Lattice lattice_preimage(const RatMatrix& map, const Lattice& target,
                                const Lattice& domain) {
  if (map.cols() != domain.ambient_rank() || map.rows() != target.ambient_rank())
    throw DimensionMismatch("lattice_preimage shapes");
  if (domain.rank() == 0) return domain;
  RatMatrix image = map * to_rat(domain.basis());
  Integer den = common_denominator(image);
  IntMatrix scaled(image.rows(), image.cols());
  for (std::size_t i = 0; i < image.rows(); ++i)
    for (std::size_t j = 0; j < image.cols(); ++j)
      scaled(i, j) = image(i, j).num() * (den / image(i, j).den());
  // scaled * c == den * target_basis * d
  IntMatrix rhs(target.ambient_rank(), target.rank());
  for (std::size_t i = 0; i < rhs.rows(); ++i)
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(i, j) = -den * target.basis()(i, j);
  IntMatrix kernel = integer_kernel(scaled.hconcat(rhs));
  IntMatrix coeffs = kernel.submatrix_rows(0, domain.rank());
  return Lattice::from_generators(domain.basis() * coeffs);
}

/// The integer points of a rational subspace given by spanning vectors.
inline Lattice saturated_lattice(const std::vector<RatVector>& span, std::size_t n) {
  auto basis = canonical_span(span, n);
  if (basis.empty()) return Lattice(n);
  // Integer points x with N x = 0, where the rows of N span the orthogonal
  // complement of the subspace.
  RatMatrix B(basis.size(), n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) = basis[i][j];
  auto complement = rat_kernel(B);
  if (complement.empty()) return Lattice::full(n);
  IntMatrix N(complement.size(), n);
  for (std::size_t i = 0; i < complement.size(); ++i) {
    Integer den = 1;
    for (const auto& x : complement[i]) den = lcm(den, x.den());
    for (std::size_t j = 0; j < n; ++j)
      N(i, j) = complement[i][j].num() * (den / complement[i][j].den());
  }
  return Lattice::from_generators(integer_kernel(N));
}

}  // namespace gbsn
