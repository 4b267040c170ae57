#pragma once

#include "gbsn/error.hpp"
#include "gbsn/gog/graph.hpp"
#include "gbsn/gog/word.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gbsn {

struct Generator {
  enum class Kind { Vertex, Stable };
  Kind kind = Kind::Vertex;
  std::string name;
  std::string vertex;     // Vertex kind
  std::size_t coord = 0;  // Vertex kind, 0-based coordinate
  std::string edge;       // Stable kind
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Relator {
  enum class Kind { Commutator, TreeEdge, StableLetter };
  Kind kind = Kind::TreeEdge;
  GroupWord word;  // freely reduced; commutators reduce to the empty word
  std::string edge;                    // TreeEdge / StableLetter
  std::size_t basis_index = 0;         // k: edge-group basis vector
  std::pair<std::size_t, std::size_t> commutator{0, 0};  // generator indices
  friend bool operator==(const Relator& a, const Relator& b) {
    return a.kind == b.kind && a.word == b.word && a.edge == b.edge &&
           a.basis_index == b.basis_index && a.commutator == b.commutator;
  }
};

/// Generators and relators of the fundamental group relative to the
/// deterministic spanning tree. Stable letters satisfy
/// t iota_from(x) t^-1 = iota_to(x).
struct Presentation {
  std::size_t rank = 0;
  std::vector<Generator> generators;
  std::vector<Relator> relators;

  std::size_t vertex_generator(const std::string& vertex, std::size_t coord) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].kind == Generator::Kind::Vertex && generators[i].vertex == vertex &&
          generators[i].coord == coord)
        return i;
    throw UnknownSymbol("no generator for vertex '" + vertex + "'");
  }

  std::optional<std::size_t> stable_generator(const std::string& edge) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].kind == Generator::Kind::Stable && generators[i].edge == edge) return i;
    return std::nullopt;
  }

  /// Exponent-sum vector of a word over the generators.
  IntVector abelianize(const GroupWord& w) const {
    IntVector out(generators.size(), Integer(0));
    for (const auto& letter : w.letters()) {
      if (const auto* v = std::get_if<VertexLetter>(&letter)) {
        if (v->vec.size() != rank) throw UnknownSymbol("vertex letter of wrong rank");
        for (std::size_t k = 0; k < rank; ++k) out[vertex_generator(v->vertex, k)] += v->vec[k];
      } else {
        const auto& s = std::get<StableLetter>(letter);
        auto idx = stable_generator(s.edge);
        if (!idx) throw UnknownSymbol("'" + s.edge + "' is not a stable letter");
        out[*idx] += s.sign;
      }
    }
    return out;
  }

  /// Integer relation matrix: rows = generators, columns = abelianized relators.
  IntMatrix relation_matrix() const {
    IntMatrix m(generators.size(), relators.size());
    for (std::size_t j = 0; j < relators.size(); ++j) {
      auto col = abelianize(relators[j].word);
      for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
    }
    return m;
  }
};

/// Letters a, b, c, ... (skipping t) across vertices in id order, or x<i>
/// once the alphabet runs out; stable letters are "t" when there is exactly
/// one, otherwise t0, t1, ... in edge-id order.
inline std::vector<Generator> generator_names(const GraphLayout& layout) {
  std::vector<Generator> gens;
  const std::size_t n = layout.rank();
  const std::size_t vertex_gens = n * layout.vertex_count();
  std::size_t counter = 0;
  for (const auto& v : layout.vertex_ids())
    for (std::size_t k = 0; k < n; ++k, ++counter) {
      Generator g;
      g.kind = Generator::Kind::Vertex;
      g.vertex = v;
      g.coord = k;
      if (vertex_gens <= 25) {
        char c = static_cast<char>('a' + counter);
        if (c >= 't') ++c;
        g.name = std::string(1, c);
      } else {
        g.name = "x" + std::to_string(counter);
      }
      gens.push_back(std::move(g));
    }
  const auto& stable = layout.non_tree_edges();
  for (std::size_t i = 0; i < stable.size(); ++i) {
    Generator g;
    g.kind = Generator::Kind::Stable;
    g.edge = layout.edge_at(stable[i]).id;
    g.name = stable.size() == 1 ? "t" : "t" + std::to_string(i);
    gens.push_back(std::move(g));
  }
  return gens;
}

inline Presentation presentation(const GbsGraph& g) {
  GraphLayout layout(g);
  Presentation p;
  p.rank = g.rank;
  p.generators = generator_names(layout);
  const std::size_t n = g.rank;

  std::size_t offset = 0;
  for (std::size_t vi = 0; vi < layout.vertex_count(); ++vi, offset += n)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Relator r;
        r.kind = Relator::Kind::Commutator;
        r.commutator = {offset + i, offset + j};
        p.relators.push_back(std::move(r));
      }

  for (std::size_t ei : layout.edge_order()) {
    if (!layout.is_tree_edge(ei)) continue;
    const Edge& e = layout.edge_at(ei);
    for (std::size_t k = 0; k < n; ++k) {
      Relator r;
      r.kind = Relator::Kind::TreeEdge;
      r.edge = e.id;
      r.basis_index = k;
      r.word = GroupWord::vertex(e.from, e.iota_from.column(k)) *
               GroupWord::vertex(e.to, -e.iota_to.column(k));
      p.relators.push_back(std::move(r));
    }
  }
  for (std::size_t ei : layout.non_tree_edges()) {
    const Edge& e = layout.edge_at(ei);
    for (std::size_t k = 0; k < n; ++k) {
      Relator r;
      r.kind = Relator::Kind::StableLetter;
      r.edge = e.id;
      r.basis_index = k;
      r.word = GroupWord::stable(e.id, 1) * GroupWord::vertex(e.from, e.iota_from.column(k)) *
               GroupWord::stable(e.id, -1) * GroupWord::vertex(e.to, -e.iota_to.column(k));
      p.relators.push_back(std::move(r));
    }
  }
  return p;
}

}  // namespace gbsn
