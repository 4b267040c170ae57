#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog.hpp"
#include "gbsn/modular.hpp"

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbsn {

/// A finite abelian quotient Q = sum Z/d_i of G, given by the image of each
/// presentation generator.
struct FiniteAbelianQuotient {
  std::vector<Integer> divisors;
  std::vector<IntVector> images;  // aligned with presentation(g).generators

  std::size_t rank() const { return divisors.size(); }

  Integer order() const {
    Integer o = 1;
    for (const auto& d : divisors) o *= d;
    return o;
  }

  IntVector reduce(IntVector v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = floor_mod(v[i], divisors[i]);
    return v;
  }

  IntMatrix diagonal() const {
    IntMatrix D(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i) D(i, i) = divisors[i];
    return D;
  }
};

/// Image of a word of G in Q.
inline IntVector quotient_image(const Presentation& p, const FiniteAbelianQuotient& q,
                                const GroupWord& w) {
  IntVector ab = p.abelianize(w);
  IntVector out(q.rank(), Integer(0));
  for (std::size_t i = 0; i < ab.size(); ++i)
    if (ab[i] != 0) out = out + ab[i] * q.images[i];
  return q.reduce(out);
}

/// Throws unless every relator dies in q and the images generate Q.
inline void check_quotient(const GbsGraph& g, const FiniteAbelianQuotient& q) {
  Presentation p = presentation(g);
  if (q.images.size() != p.generators.size())
    throw InvalidFamilyParameter("quotient needs one image per generator");
  for (const auto& d : q.divisors)
    if (d < 2) throw InvalidFamilyParameter("quotient divisors must be at least 2");
  for (const auto& img : q.images)
    if (img.size() != q.rank()) throw InvalidFamilyParameter("quotient image of wrong length");
  for (const auto& r : p.relators)
    if (!is_zero(quotient_image(p, q, r.word)))
      throw InvalidFamilyParameter("a relator does not vanish in the quotient");
  if (q.rank() == 0) return;
  IntMatrix gens(q.rank(), q.images.size());
  for (std::size_t j = 0; j < q.images.size(); ++j) gens.set_column(j, q.images[j]);
  if (Lattice::from_generators(gens.hconcat(q.diagonal())).index() != 1)
    throw InvalidFamilyParameter("quotient images do not generate");
}

/// G / G'G^2 from the relation matrix over the two-element field. Each
/// coordinate of Q is a vector y with y^T A = 0 mod 2 (A = relation matrix),
/// so the kernel of the map is exactly the mod-2 column span of A.
inline FiniteAbelianQuotient mod2_quotient(const GbsGraph& g) {
  IntMatrix A = presentation(g).relation_matrix();
  const std::size_t m = A.rows(), r = A.cols();
  // Row-reduce A^T (r x m) over GF(2).
  std::vector<std::vector<std::uint8_t>> rows(r, std::vector<std::uint8_t>(m, 0));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < m; ++i) rows[j][i] = static_cast<std::uint8_t>(floor_mod(A(i, j), 2));
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < r; ++col) {
    std::size_t p = rank;
    while (p < r && !rows[p][col]) ++p;
    if (p == r) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t i = 0; i < r; ++i)
      if (i != rank && rows[i][col])
        for (std::size_t j = 0; j < m; ++j) rows[i][j] ^= rows[rank][j];
    pivots.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(m, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint8_t>> kernel;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint8_t> y(m, 0);
    y[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) y[pivots[k]] = rows[k][f];
    kernel.push_back(std::move(y));
  }
  FiniteAbelianQuotient q;
  q.divisors.assign(kernel.size(), Integer(2));
  q.images.assign(m, IntVector(kernel.size(), Integer(0)));
  for (std::size_t c = 0; c < kernel.size(); ++c)
    for (std::size_t i = 0; i < m; ++i) q.images[i][c] = kernel[c][i];
  return q;
}

/// Cosets of a subgroup S of Q = sum Z/d_i. Representatives are the
/// lexicographically smallest elements in the 0 <= x_i < d_i encoding,
/// obtained by reduction against the HNF of the preimage of S in Z^k.
class CosetSpace {
 public:
  CosetSpace(const IntMatrix& generators, const FiniteAbelianQuotient& q)
      : k_(q.rank()), lattice_(q.rank()) {
    if (k_ == 0) return;
    lattice_ = Lattice::from_generators(generators.hconcat(q.diagonal()));
  }

  IntVector reduce(IntVector v) const {
    if (k_ == 0) return v;
    const IntMatrix& H = lattice_.basis();
    for (std::size_t j = 0; j < k_; ++j) {
      Integer f = floor_div(v[j], H(j, j));
      if (f != 0)
        for (std::size_t i = j; i < k_; ++i) v[i] -= f * H(i, j);
    }
    return v;
  }

  Integer count() const { return k_ == 0 ? Integer(1) : lattice_.index(); }

  std::vector<IntVector> representatives() const {
    std::vector<IntVector> out;
    IntVector cur(k_, Integer(0));
    if (k_ == 0) return {cur};
    const IntMatrix& H = lattice_.basis();
    while (true) {
      out.push_back(cur);
      std::size_t i = k_;
      while (i > 0) {
        --i;
        if (++cur[i] < H(i, i)) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
    }
  }

 private:
  std::size_t k_;
  Lattice lattice_;
};

struct LiftOrigin {
  std::string id;  // vertex or edge of the original graph
  IntVector coset; // canonical coset representative in Q
};

/// Decomposition of H = q^-1(K) read off from its action on the Bass-Serre
/// tree of G.
struct InducedDecomposition {
  GbsGraph subgroup_graph;
  Lattice base_lattice{1};              // vertex group of the base H-vertex, in base coordinates of G
  Integer index = 1;                    // [G : H]
  std::map<std::string, LiftOrigin> vertex_origin;
  std::map<std::string, LiftOrigin> edge_origin;
  std::map<std::string, IntMatrix> vertex_basis;  // B_C: H-coordinates -> Z^n of the G-vertex
  std::map<std::string, GroupWord> vertex_lift;   // lambda_C
  std::map<std::string, GroupWord> stable_translation;  // H non-tree edge -> element of G
  std::vector<Generator> generators;              // presentation(subgroup_graph).generators
  std::vector<GroupWord> generator_translation;   // aligned with generators

  /// Rewrites a word of H (over subgroup_graph) as a word of G.
  GroupWord translate(const GroupWord& w) const {
    GroupWord out;
    for (const auto& letter : w.letters()) {
      if (const auto* v = std::get_if<VertexLetter>(&letter)) {
        auto basis = vertex_basis.find(v->vertex);
        if (basis == vertex_basis.end()) throw UnknownSymbol("unknown vertex '" + v->vertex + "'");
        const GroupWord& lift = vertex_lift.at(v->vertex);
        out *= GroupWord::vertex(vertex_origin.at(v->vertex).id, basis->second * v->vec)
                   .conjugated_by(lift);
      } else {
        const auto& s = std::get<StableLetter>(letter);
        auto it = stable_translation.find(s.edge);
        if (it == stable_translation.end())
          throw UnknownSymbol("'" + s.edge + "' is not a stable letter");
        out *= s.sign > 0 ? it->second : it->second.inverse();
      }
    }
    return out;
  }
};

/// Covering-degree cap from GBSN_MAX_INDEX (default 1024).
inline Integer max_index_from_env() {
  if (const char* s = std::getenv("GBSN_MAX_INDEX")) {
    try {
      long long v = std::stoll(s);
      if (v > 0) return Integer(v);
    } catch (const std::exception&) {
    }
  }
  return 1024;
}

namespace detail {

inline std::string vector_key(const IntVector& v) {
  std::string s;
  for (const auto& x : v) s += x.str() + ",";
  return s;
}

inline IntMatrix columns_of(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

/// {x in Z^n : M x in K + D Z^k}
inline Lattice preimage_lattice(const IntMatrix& M, const IntMatrix& Kmat,
                                const FiniteAbelianQuotient& q, std::size_t n) {
  IntMatrix system = M.hconcat(Kmat).hconcat(q.diagonal());
  IntMatrix kernel = integer_kernel(system);
  return Lattice::from_generators(kernel.submatrix_rows(0, n));
}

/// Some x in Z^n with M x in target + span(extra) + D Z^k.
inline IntVector solve_mod(const IntMatrix& M, const IntMatrix& extra,
                           const FiniteAbelianQuotient& q, const IntVector& target,
                           std::size_t n) {
  if (q.rank() == 0) return IntVector(n, Integer(0));
  auto sol = integer_solve(M.hconcat(extra).hconcat(q.diagonal()), target);
  if (!sol) throw std::logic_error("coset equation has no solution");
  return IntVector(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace detail

inline InducedDecomposition induced_decomposition(const GbsGraph& g,
                                                  const FiniteAbelianQuotient& q,
                                                  const std::vector<IntVector>& K,
                                                  std::optional<Integer> max_index = std::nullopt) {
  GraphLayout layout(g);
  Presentation pres = presentation(g);
  const std::size_t n = g.rank, k = q.rank();
  if (q.images.size() != pres.generators.size())
    throw InvalidFamilyParameter("quotient does not match the presentation");
  for (const auto& x : K) {
    if (x.size() != k) throw NotASubgroup("subgroup generator has the wrong length");
    for (std::size_t i = 0; i < k; ++i)
      if (x[i] < 0 || x[i] >= q.divisors[i])
        throw NotASubgroup("subgroup generator is not an element of the quotient");
  }
  IntMatrix Kmat = detail::columns_of(K, k);

  InducedDecomposition out;
  out.index = CosetSpace(Kmat, q).count();
  const Integer cap = max_index ? *max_index : max_index_from_env();
  if (out.index > cap)
    throw IndexTooLarge("covering degree " + out.index.str() + " exceeds cap " + cap.str());

  auto vertex_map = [&](const std::string& v) {
    std::vector<IntVector> cols;
    for (std::size_t c = 0; c < n; ++c) cols.push_back(q.images[pres.vertex_generator(v, c)]);
    return detail::columns_of(cols, k);
  };
  auto stable_image = [&](std::size_t ei) {
    auto idx = pres.stable_generator(layout.edge_at(ei).id);
    return idx && !layout.is_tree_edge(ei) ? q.images[*idx] : IntVector(k, Integer(0));
  };

  // Vertices.
  struct VertexInfo {
    IntMatrix M;
    CosetSpace cosets;
    Lattice lattice;
    std::vector<IntVector> reps;
  };
  std::vector<VertexInfo> vinfo;
  std::size_t total_vertices = 0;
  for (std::size_t vi = 0; vi < layout.vertex_count(); ++vi) {
    IntMatrix M = vertex_map(layout.vertex_id(vi));
    CosetSpace cosets(M.hconcat(Kmat), q);
    auto reps = cosets.representatives();
    total_vertices += reps.size();
    vinfo.push_back(VertexInfo{M, cosets, detail::preimage_lattice(M, Kmat, q, n), reps});
  }
  std::map<std::pair<std::size_t, std::string>, std::string> vertex_name;
  std::map<std::string, std::size_t> vertex_of;
  std::size_t counter = 0;
  GbsGraph H;
  H.rank = n;
  for (std::size_t vi = 0; vi < layout.vertex_count(); ++vi)
    for (const auto& rep : vinfo[vi].reps) {
      std::string id = detail::padded_id("h", counter++, total_vertices);
      H.vertices.push_back(id);
      vertex_name[{vi, detail::vector_key(rep)}] = id;
      vertex_of[id] = vi;
      out.vertex_origin[id] = LiftOrigin{layout.vertex_id(vi), rep};
      out.vertex_basis[id] = vinfo[vi].lattice.basis();
    }

  // Edges.
  struct EdgeInfo {
    std::size_t g_edge;
    IntMatrix M;  // q restricted to the edge group, via the from side
  };
  std::map<std::string, EdgeInfo> einfo;
  std::vector<std::tuple<std::size_t, IntVector, IntMatrix, std::string, std::string, IntMatrix,
                         IntMatrix>>
      pending;
  std::size_t total_edges = 0;
  for (std::size_t ei : layout.edge_order()) {
    const Edge& e = layout.edge_at(ei);
    const std::size_t u = layout.from_vertex(ei), v = layout.to_vertex(ei);
    IntMatrix Me = vinfo[u].M * e.iota_from;
    CosetSpace cosets(Me.hconcat(Kmat), q);
    Lattice Le = detail::preimage_lattice(Me, Kmat, q, n);
    RatMatrix Be = to_rat(Le.basis());
    IntMatrix inj_from = to_int(rat_inverse(vinfo[u].lattice.basis()) * to_rat(e.iota_from) * Be);
    IntMatrix inj_to = to_int(rat_inverse(vinfo[v].lattice.basis()) * to_rat(e.iota_to) * Be);
    IntVector qt = stable_image(ei);
    for (const auto& d : cosets.representatives()) {
      std::string from = vertex_name.at({u, detail::vector_key(vinfo[u].cosets.reduce(d))});
      std::string to =
          vertex_name.at({v, detail::vector_key(vinfo[v].cosets.reduce(q.reduce(d - qt)))});
      pending.emplace_back(ei, d, Me, from, to, inj_from, inj_to);
      ++total_edges;
    }
  }
  counter = 0;
  for (auto& [ei, d, Me, from, to, inj_from, inj_to] : pending) {
    std::string id = detail::padded_id("f", counter++, total_edges);
    H.edges.push_back(Edge{id, from, to, inj_from, inj_to});
    out.edge_origin[id] = LiftOrigin{layout.edge_at(ei).id, d};
    einfo.emplace(id, EdgeInfo{ei, Me});
  }
  out.subgroup_graph = H;
  out.base_lattice = vinfo[layout.base()].lattice;

  // Lifts of the H-vertices along the spanning tree of H.
  GraphLayout hl(H);
  std::vector<GroupWord> lift(hl.vertex_count());
  std::vector<IntVector> qlift(hl.vertex_count(), IntVector(k, Integer(0)));
  for (std::size_t c : hl.bfs_order()) {
    auto pe = hl.parent_edge(c);
    if (!pe) continue;
    const std::size_t p = hl.parent(c);
    const Edge& f = hl.edge_at(*pe);
    const EdgeInfo& info = einfo.at(f.id);
    const Edge& e = layout.edge_at(info.g_edge);
    const bool stable = !layout.is_tree_edge(info.g_edge);
    const IntVector& d = out.edge_origin.at(f.id).coset;
    IntMatrix extra = Kmat.hconcat(info.M);
    if (hl.from_vertex(*pe) == p) {
      IntVector x = detail::solve_mod(vinfo[layout.from_vertex(info.g_edge)].M, extra, q,
                                      d - qlift[p], n);
      lift[c] = lift[p] * GroupWord::vertex(e.from, x);
      if (stable) lift[c] *= GroupWord::stable(e.id, -1);
    } else {
      IntVector qt = stable_image(info.g_edge);
      IntVector y = detail::solve_mod(vinfo[layout.to_vertex(info.g_edge)].M, extra, q,
                                      d - qlift[p] - qt, n);
      lift[c] = lift[p] * GroupWord::vertex(e.to, y);
      if (stable) lift[c] *= GroupWord::stable(e.id, 1);
    }
    qlift[c] = quotient_image(pres, q, lift[c]);
    const std::string& cid = hl.vertex_id(c);
    const std::size_t gv = vertex_of.at(cid);
    if (vinfo[gv].cosets.reduce(qlift[c]) != out.vertex_origin.at(cid).coset)
      throw std::logic_error("vertex lift lands in the wrong coset");
  }
  for (std::size_t c = 0; c < hl.vertex_count(); ++c) out.vertex_lift[hl.vertex_id(c)] = lift[c];

  // Stable letters of H as elements of G.
  for (std::size_t fi : hl.non_tree_edges()) {
    const Edge& f = hl.edge_at(fi);
    const EdgeInfo& info = einfo.at(f.id);
    const Edge& e = layout.edge_at(info.g_edge);
    const bool stable = !layout.is_tree_edge(info.g_edge);
    const std::size_t cf = hl.from_vertex(fi), ct = hl.to_vertex(fi);
    const std::size_t u = layout.from_vertex(info.g_edge), v = layout.to_vertex(info.g_edge);
    const IntVector& d = out.edge_origin.at(f.id).coset;
    IntVector qt = stable_image(info.g_edge);
    IntVector xf = detail::solve_mod(vinfo[u].M, Kmat.hconcat(info.M), q, d - qlift[cf], n);
    IntVector target = qlift[cf] + vinfo[u].M * xf - qt - qlift[ct];
    IntVector xt = detail::solve_mod(vinfo[v].M, Kmat, q, target, n);
    GroupWord tau = lift[ct] * GroupWord::vertex(e.to, xt);
    if (stable) tau *= GroupWord::stable(e.id, 1);
    tau *= GroupWord::vertex(e.from, -xf) * lift[cf].inverse();
    if (!is_zero(CosetSpace(Kmat, q).reduce(quotient_image(pres, q, tau))))
      throw std::logic_error("stable letter translation is not in the subgroup");
    out.stable_translation[f.id] = tau;
  }

  Presentation hp = presentation(H);
  out.generators = hp.generators;
  for (const auto& gen : hp.generators) {
    if (gen.kind == Generator::Kind::Vertex) {
      IntVector unit(n, Integer(0));
      unit[gen.coord] = 1;
      out.generator_translation.push_back(out.translate(GroupWord::vertex(gen.vertex, unit)));
    } else {
      out.generator_translation.push_back(out.stable_translation.at(gen.edge));
    }
  }
  return out;
}

struct ConsistencyReport {
  bool pass = true;
  std::optional<std::string> counterexample;  // H edge id
  RatMatrix conjugator;                       // C: columns = base lattice basis
  RatMatrix expected, actual;                 // for the counterexample
};

/// Checks M_G(translation of s) = C M_H(s) C^-1 for every stable letter s of H.
inline ConsistencyReport restricted_modular_consistency(const GbsGraph& g,
                                                        const InducedDecomposition& d) {
  ConsistencyReport r;
  GraphLayout gl(g);
  ModularData gm = modular_data(gl);
  ModularData hm = modular_data(d.subgroup_graph);
  r.conjugator = to_rat(d.base_lattice.basis());
  RatMatrix inv = rat_inverse(r.conjugator);
  for (const auto& [edge, tau] : d.stable_translation) {
    RatMatrix actual = modular_image(gl, gm, tau);
    RatMatrix expected = r.conjugator * hm.stable_matrices.at(edge) * inv;
    if (actual != expected) {
      r.pass = false;
      r.counterexample = edge;
      r.expected = expected;
      r.actual = actual;
      return r;
    }
  }
  return r;
}

}  // namespace gbsn
