#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog/graph.hpp"

#include <string>
#include <vector>

namespace gbsn {

namespace detail {

inline std::string padded_id(const std::string& prefix, std::size_t i, std::size_t count) {
  std::string digits = std::to_string(i);
  std::size_t width = std::to_string(count == 0 ? 0 : count - 1).size();
  while (digits.size() < width) digits.insert(digits.begin(), '0');
  return prefix + digits;
}

inline GbsGraph one_loop(std::size_t n, IntMatrix from, IntMatrix to) {
  GbsGraph g;
  g.rank = n;
  g.vertices = {"v0"};
  g.edges.push_back(Edge{"e0", "v0", "v0", std::move(from), std::move(to)});
  return g;
}

}  // namespace detail

/// Baumslag-Solitar group <a, t | t a^m t^-1 = a^n>.
inline GbsGraph bs(long long m, long long n) {
  if (m == 0 || n == 0) throw InvalidFamilyParameter("bs(m, n) needs nonzero m and n");
  return detail::one_loop(1, IntMatrix{{Integer(m)}}, IntMatrix{{Integer(n)}});
}

inline GbsGraph klein_bottle() { return bs(1, -1); }

/// Z^n x F_r: one vertex and r loops with identity injections.
inline GbsGraph zn_cross_fr(std::size_t n, std::size_t r) {
  if (n < 1) throw InvalidFamilyParameter("zn_cross_fr needs n >= 1");
  GbsGraph g;
  g.rank = n;
  g.vertices = {"v0"};
  for (std::size_t i = 0; i < r; ++i)
    g.edges.push_back(Edge{detail::padded_id("e", i, r), "v0", "v0", IntMatrix::identity(n),
                           IntMatrix::identity(n)});
  return g;
}

/// Mapping torus of an automorphism of Z^n (M must be unimodular).
inline GbsGraph hnn_automorphism(const IntMatrix& M) {
  if (!M.is_square() || M.rows() == 0)
    throw InvalidFamilyParameter("automorphism must be a nonempty square matrix");
  Integer d = determinant(M);
  if (d != 1 && d != -1) throw InvalidFamilyParameter("automorphism must have determinant +-1");
  return detail::one_loop(M.rows(), IntMatrix::identity(M.rows()), M);
}

/// The largest admissible choice for B: {x in Z^n : M x in Z^n}.
inline Lattice lm_maximal_lattice(const RatMatrix& M) {
  if (!M.is_square()) throw InvalidFamilyParameter("M must be square");
  const std::size_t n = M.rows();
  return lattice_preimage(M, Lattice::full(n), Lattice::full(n));
}

/// One vertex, one loop: iota_from = B, iota_to = M B. The columns of B are
/// used as the edge-group basis exactly as given.
inline GbsGraph lm_general(std::size_t n, const RatMatrix& M, const IntMatrix& B) {
  if (n < 1) throw InvalidFamilyParameter("n must be at least 1");
  if (M.rows() != n || M.cols() != n) throw InvalidFamilyParameter("M must be n x n");
  if (B.rows() != n || B.cols() != n) throw InvalidFamilyParameter("B needs n basis columns in Z^n");
  if (rat_determinant(M) == Rat(0)) throw InvalidFamilyParameter("M is singular");
  if (determinant(B) == 0) throw InvalidFamilyParameter("B is not of full rank");
  RatMatrix image = M * to_rat(B);
  if (!is_integral(image)) throw InvalidFamilyParameter("M B is not contained in Z^n");
  return detail::one_loop(n, B, to_int(image));
}

inline GbsGraph lm_general(std::size_t n, const RatMatrix& M, const Lattice& B) {
  if (B.ambient_rank() != n) throw InvalidFamilyParameter("B has the wrong ambient rank");
  if (!B.is_full_rank()) throw InvalidFamilyParameter("B is not of full rank");
  return lm_general(n, M, B.basis());
}

inline RatMatrix leary_minasyan_matrix() {
  return RatMatrix{{Rat(3, 5), Rat(-4, 5)}, {Rat(4, 5), Rat(3, 5)}};
}

/// Rank-2 example with the rotation matrix above and B = A cap M^-1(A),
/// written in the basis (2,-1), (1,2). The resulting group has infinite
/// monodromy, so it is not virtually an HHG and lacks (QT), although it is
/// quasi-isometric to Z^2 x F_2, which has both.
inline GbsGraph leary_minasyan() {
  RatMatrix M = leary_minasyan_matrix();
  IntMatrix B{{Integer(2), Integer(1)}, {Integer(-1), Integer(2)}};
  if (Lattice::from_generators(B) != lm_maximal_lattice(M))
    throw std::logic_error("leary_minasyan basis does not span A cap M^-1 A");
  return lm_general(2, M, B);
}

inline const char* leary_minasyan_note() {
  return "not virtually hierarchically hyperbolic and without (QT), yet quasi-isometric "
         "to Z^2 x F_5; neither property is a quasi-isometry invariant";
}

}  // namespace gbsn
