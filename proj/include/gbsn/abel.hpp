#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog.hpp"
#include "gbsn/modular.hpp"
#include "gbsn/subgroup.hpp"

#include <stdexcept>
#include <vector>

namespace gbsn {

struct AbelianizationReport {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_divisors;  // each > 1, divisibility chain
};

/// Free rank and torsion of Z^m / S, where S is spanned by the columns of
/// the relation matrix (rows = generators).
inline AbelianizationReport abelianization_of(const IntMatrix& relations) {
  AbelianizationReport r;
  auto s = snf(relations);
  std::size_t nonzero = 0;
  for (const auto& d : s.divisors) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) r.torsion_divisors.push_back(d);
  }
  r.free_rank = relations.rows() - nonzero;
  if (relations.cols() > 0 && relations.rows() > 0 &&
      r.free_rank != relations.rows() - rat_rank(to_rat(relations)))
    throw std::logic_error("Smith and rational ranks disagree");
  return r;
}

inline AbelianizationReport abelianization(const GbsGraph& g) {
  return abelianization_of(presentation(g).relation_matrix());
}

struct KernelSubspace {
  std::vector<RatVector> basis;  // reduced row echelon rows
  std::size_t dimension() const { return basis.size(); }
  friend bool operator==(const KernelSubspace&, const KernelSubspace&) = default;
};

/// Sum over non-tree edges of the image of I - M(t_e).
inline KernelSubspace stable_image_subspace(const GbsGraph& g) {
  auto d = modular_data(g);
  const std::size_t n = g.rank;
  std::vector<RatVector> span;
  for (const auto& [id, m] : d.stable_matrices) {
    RatMatrix diff = RatMatrix::identity(n) - m;
    for (std::size_t k = 0; k < n; ++k) span.push_back(diff.column(k));
  }
  return KernelSubspace{canonical_span(span, n)};
}

/// The span in W of psi[u] iota_from e_k - psi[v] iota_to e_k over the
/// non-tree edges; cross-checked against stable_image_subspace.
inline KernelSubspace kernel_subspace_R(const GbsGraph& g) {
  GraphLayout layout(g);
  auto d = modular_data(layout);
  const std::size_t n = g.rank;
  std::vector<RatVector> span;
  for (std::size_t ei : layout.non_tree_edges()) {
    const Edge& e = layout.edge_at(ei);
    RatMatrix from = d.psi.at(e.from) * to_rat(e.iota_from);
    RatMatrix to = d.psi.at(e.to) * to_rat(e.iota_to);
    RatMatrix diff = from - to;
    for (std::size_t k = 0; k < n; ++k) span.push_back(diff.column(k));
  }
  KernelSubspace R{canonical_span(span, n)};
  if (R != stable_image_subspace(g))
    throw std::logic_error("kernel subspace disagrees with sum of images of I - M(t)");
  return R;
}

/// True iff every stable letter has exponent sum zero in w and the W-image
/// of its vertex part lies in R.
inline bool is_trivial_in_free_abelianization(const GbsGraph& g, const GroupWord& w) {
  GraphLayout layout(g);
  auto d = modular_data(layout);
  const std::size_t n = g.rank;
  std::map<std::string, long long> exponent;
  RatVector image(n, Rat(0));
  for (const auto& letter : w.letters()) {
    if (const auto* v = std::get_if<VertexLetter>(&letter)) {
      layout.vertex(v->vertex);
      if (v->vec.size() != n) throw UnknownSymbol("vertex letter of wrong rank");
      RatVector y = d.psi.at(v->vertex) * to_rat(v->vec);
      for (std::size_t i = 0; i < n; ++i) image[i] += y[i];
    } else {
      const auto& s = std::get<StableLetter>(letter);
      if (!d.stable_matrices.count(s.edge))
        throw UnknownSymbol("'" + s.edge + "' is not a stable letter");
      exponent[s.edge] += s.sign;
    }
  }
  for (const auto& [e, k] : exponent)
    if (k != 0) return false;
  return in_span(kernel_subspace_R(g).basis, image);
}

/// Base-vertex elements that die in the free abelianization: R cap Z^n.
inline Lattice trivial_sublattice_of_base(const GbsGraph& g) {
  return saturated_lattice(kernel_subspace_R(g).basis, g.rank);
}

/// Nonzero vector of smallest max-norm, first nonzero entry positive, ties
/// broken lexicographically.
inline IntVector shortest_vector(const Lattice& L) {
  if (L.rank() == 0) throw Error("zero lattice has no nonzero vector");
  const std::size_t n = L.ambient_rank();
  Integer limit = 0;
  for (const auto& x : L.basis().column(0)) limit = std::max(limit, abs(x));
  for (Integer r = 1; r <= limit; ++r) {
    IntVector v(n, -r);
    while (true) {
      Integer norm = 0;
      std::size_t first = n;
      for (std::size_t i = 0; i < n; ++i) {
        norm = std::max(norm, abs(v[i]));
        if (first == n && v[i] != 0) first = i;
      }
      if (norm == r && v[first] > 0 && L.contains(v)) return v;
      std::size_t i = n;
      while (i > 0 && v[i - 1] == r) v[--i] = -r;
      if (i == 0) break;
      ++v[i - 1];
    }
  }
  throw std::logic_error("shortest_vector search exhausted");
}

struct NeverLoxodromicWitness {
  IntVector z;                      // base coordinates of G
  IntVector z_subgroup;             // coordinates in the base vertex group of G2
  FiniteAbelianQuotient quotient;   // G -> G / G2
  InducedDecomposition decomposition;
  KernelSubspace subgroup_R;
  Lattice trivial_lattice{1};       // A cap G2 elements trivial in the free abelianization of G2
  GroupWord subgroup_word;          // z as a word of G2
  bool trivial_in_subgroup = false;
};

/// For infinite monodromy: a shortest nonzero z in A cap G2 that is trivial
/// in the free abelianization of G2, where G2 is the intersection of all
/// index-2 subgroups. Finite monodromy gives nullopt.
inline std::optional<NeverLoxodromicWitness> witness_never_loxodromic(const GbsGraph& g) {
  if (monodromy_finiteness(g).finite) return std::nullopt;
  NeverLoxodromicWitness w;
  w.quotient = mod2_quotient(g);
  w.decomposition = induced_decomposition(g, w.quotient, {});
  const GbsGraph& H = w.decomposition.subgroup_graph;
  w.subgroup_R = kernel_subspace_R(H);
  if (w.subgroup_R.dimension() == 0)
    throw std::logic_error("infinite monodromy but the subgroup has R = 0");
  Lattice inner = saturated_lattice(w.subgroup_R.basis, g.rank);
  const IntMatrix& C = w.decomposition.base_lattice.basis();
  w.trivial_lattice = Lattice::from_generators(C * inner.basis());
  w.z = shortest_vector(w.trivial_lattice);
  auto coords = to_int(rat_inverse(C) * to_rat(w.z));
  if (!coords) throw std::logic_error("witness is not in the subgroup base lattice");
  w.z_subgroup = *coords;
  w.subgroup_word = GroupWord::vertex(GraphLayout(H).base_id(), w.z_subgroup);
  w.trivial_in_subgroup = is_trivial_in_free_abelianization(H, w.subgroup_word);
  return w;
}

}  // namespace gbsn
