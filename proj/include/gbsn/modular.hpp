#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog/graph.hpp"
#include "gbsn/gog/word.hpp"

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace gbsn {

/// psi[v] identifies the Q-span of vertex group v with W = Q^n in base
/// coordinates; stable_matrices[e] is M(t_e) for each non-tree edge.
struct ModularData {
  std::string base_vertex;
  std::map<std::string, RatMatrix> psi;
  std::map<std::string, RatMatrix> stable_matrices;
};

inline ModularData modular_data(const GraphLayout& layout,
                                const std::optional<std::string>& base = std::nullopt) {
  const std::size_t n = layout.rank();
  std::vector<RatMatrix> psi(layout.vertex_count());
  psi[layout.base()] = RatMatrix::identity(n);
  for (std::size_t v : layout.bfs_order()) {
    auto pe = layout.parent_edge(v);
    if (!pe) continue;
    const Edge& e = layout.edge_at(*pe);
    const std::size_t p = layout.parent(v);
    if (layout.from_vertex(*pe) == p)
      psi[v] = psi[p] * to_rat(e.iota_from) * rat_inverse(e.iota_to);
    else
      psi[v] = psi[p] * to_rat(e.iota_to) * rat_inverse(e.iota_from);
  }

  ModularData d;
  d.base_vertex = layout.base_id();
  RatMatrix shift = RatMatrix::identity(n), shift_inv = RatMatrix::identity(n);
  if (base && *base != layout.base_id()) {
    std::size_t b = layout.vertex(*base);
    d.base_vertex = *base;
    shift = psi[b];
    shift_inv = rat_inverse(psi[b]);
  }
  for (std::size_t v = 0; v < layout.vertex_count(); ++v)
    d.psi[layout.vertex_id(v)] = shift_inv * psi[v];
  for (std::size_t ei : layout.non_tree_edges()) {
    const Edge& e = layout.edge_at(ei);
    RatMatrix m = psi[layout.to_vertex(ei)] * to_rat(e.iota_to) * rat_inverse(e.iota_from) *
                  rat_inverse(psi[layout.from_vertex(ei)]);
    d.stable_matrices[e.id] = shift_inv * m * shift;
  }
  return d;
}

inline ModularData modular_data(const GbsGraph& g,
                                const std::optional<std::string>& base = std::nullopt) {
  return modular_data(GraphLayout(g), base);
}

/// M(w) with M(gh) = M(g) M(h); vertex letters map to the identity.
inline RatMatrix modular_image(const GraphLayout& layout, const ModularData& d,
                               const GroupWord& w) {
  const std::size_t n = layout.rank();
  RatMatrix out = RatMatrix::identity(n);
  for (const auto& letter : w.letters()) {
    if (const auto* v = std::get_if<VertexLetter>(&letter)) {
      layout.vertex(v->vertex);
      if (v->vec.size() != n) throw UnknownSymbol("vertex letter of wrong rank");
      continue;
    }
    const auto& s = std::get<StableLetter>(letter);
    auto it = d.stable_matrices.find(s.edge);
    if (it == d.stable_matrices.end())
      throw UnknownSymbol("'" + s.edge + "' is not a stable letter");
    out = out * (s.sign > 0 ? it->second : rat_inverse(it->second));
  }
  return out;
}

inline RatMatrix modular_image(const GbsGraph& g, const GroupWord& w) {
  GraphLayout layout(g);
  return modular_image(layout, modular_data(layout), w);
}

/// Largest order of a finite subgroup of GL(n, Q):
/// prod over primes p <= n+1 of p^(sum_i floor(n / (p^i (p-1)))).
inline Integer minkowski_bound(std::size_t n) {
  if (n < 1) throw InvalidFamilyParameter("minkowski_bound needs n >= 1");
  Integer bound = 1;
  for (std::size_t p = 2; p <= n + 1; ++p) {
    bool prime = true;
    for (std::size_t q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    std::size_t exponent = 0;
    for (std::size_t pk = 1; pk * (p - 1) <= n; pk *= p) exponent += n / (pk * (p - 1));
    for (std::size_t i = 0; i < exponent; ++i) bound *= p;
  }
  return bound;
}

struct MonodromyReport {
  bool finite = false;
  Integer order = 0;               // group order when finite
  std::size_t elements_enumerated = 0;
  bool trivial = false;
  std::vector<RatMatrix> elements; // the whole group when finite
};

/// Breadth-first closure of the generators and their inverses. Stops as soon
/// as the element count exceeds the Minkowski bound for n.
inline MonodromyReport monodromy_closure(const std::vector<RatMatrix>& generators,
                                         std::size_t n) {
  const Integer bound = minkowski_bound(n);
  std::vector<RatMatrix> gens;
  for (const auto& m : generators) {
    gens.push_back(m);
    gens.push_back(rat_inverse(m));
  }
  MonodromyReport report;
  std::unordered_set<std::string> seen;
  std::deque<std::size_t> queue;
  report.elements.push_back(RatMatrix::identity(n));
  seen.insert(matrix_key(report.elements.back()));
  queue.push_back(0);
  while (!queue.empty()) {
    RatMatrix current = report.elements[queue.front()];
    queue.pop_front();
    for (const auto& s : gens) {
      RatMatrix next = current * s;
      if (!seen.insert(matrix_key(next)).second) continue;
      report.elements.push_back(std::move(next));
      if (Integer(report.elements.size()) > bound) {
        report.finite = false;
        report.elements_enumerated = report.elements.size();
        report.elements.clear();
        return report;
      }
      queue.push_back(report.elements.size() - 1);
    }
  }
  report.finite = true;
  report.order = report.elements.size();
  report.elements_enumerated = report.elements.size();
  report.trivial = report.elements.size() == 1;
  return report;
}

inline MonodromyReport monodromy_finiteness(const GbsGraph& g) {
  auto d = modular_data(g);
  std::vector<RatMatrix> gens;
  for (const auto& [id, m] : d.stable_matrices) gens.push_back(m);
  return monodromy_closure(gens, g.rank);
}

enum class BasicCase { NotBasic, Zn, ZnSemidirectZ, IndexTwoAmalgam };

inline const char* to_string(BasicCase c) {
  switch (c) {
    case BasicCase::Zn: return "Zn";
    case BasicCase::ZnSemidirectZ: return "ZnSemidirectZ";
    case BasicCase::IndexTwoAmalgam: return "IndexTwoAmalgam";
    default: return "NotBasic";
  }
}

/// Repeatedly contracts non-loop edges that are onto at one end, rewriting
/// the injections of the remaining edges, then recognises the small shapes.
inline BasicCase is_basic_case(const GbsGraph& input) {
  require_valid(input);
  GbsGraph g = input;
  auto unimodular = [](const IntMatrix& m) { return abs(determinant(m)) == 1; };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.edges.size() && !changed; ++i) {
      Edge e = g.edges[i];
      if (e.from == e.to) continue;
      std::string gone, kept;
      IntMatrix transfer;  // gone-vertex coordinates -> kept-vertex coordinates
      if (unimodular(e.iota_from)) {
        gone = e.from;
        kept = e.to;
        transfer = to_int(to_rat(e.iota_to) * rat_inverse(e.iota_from));
      } else if (unimodular(e.iota_to)) {
        gone = e.to;
        kept = e.from;
        transfer = to_int(to_rat(e.iota_from) * rat_inverse(e.iota_to));
      } else {
        continue;
      }
      g.edges.erase(g.edges.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& other : g.edges) {
        if (other.from == gone) {
          other.from = kept;
          other.iota_from = transfer * other.iota_from;
        }
        if (other.to == gone) {
          other.to = kept;
          other.iota_to = transfer * other.iota_to;
        }
      }
      g.vertices.erase(std::find(g.vertices.begin(), g.vertices.end(), gone));
      changed = true;
    }
  }
  if (g.vertices.size() == 1 && g.edges.empty()) return BasicCase::Zn;
  if (g.vertices.size() == 1 && g.edges.size() == 1 && unimodular(g.edges[0].iota_from) &&
      unimodular(g.edges[0].iota_to))
    return BasicCase::ZnSemidirectZ;
  if (g.vertices.size() == 2 && g.edges.size() == 1 &&
      abs(determinant(g.edges[0].iota_from)) == 2 && abs(determinant(g.edges[0].iota_to)) == 2)
    return BasicCase::IndexTwoAmalgam;
  return BasicCase::NotBasic;
}

}  // namespace gbsn
