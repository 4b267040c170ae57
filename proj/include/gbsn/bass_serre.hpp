#pragma once

#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbsn {

/// One edge traversal. Sign +1 is the letter t_e and walks from to(e) to
/// from(e); sign -1 walks from(e) to to(e). Tree edges use the same
/// symbols with t_e = 1.
struct Step {
  std::size_t edge = 0;  // edge index in the graph
  int sign = 1;
  friend bool operator==(const Step&, const Step&) = default;
};

/// x_0 s_1 x_1 ... s_k x_k with x_i in the vertex group at vertices[i].
struct PathWord {
  std::vector<std::size_t> vertices;
  std::vector<IntVector> elements;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  friend bool operator==(const PathWord&, const PathWord&) = default;
};

enum class TreeKind { Elliptic, Hyperbolic };

struct TreeClassification {
  TreeKind kind = TreeKind::Elliptic;
  std::size_t translation_length = 0;
};

/// Word reduction on the Bass-Serre tree of a fixed graph. Edge images are
/// stored in Hermite form together with the transform back to edge
/// coordinates, so each pinch test is one lattice_solve.
class BassSerre {
 public:
  explicit BassSerre(GbsGraph g) : layout_(std::move(g)) {
    for (std::size_t ei = 0; ei < layout_.graph().edges.size(); ++ei) {
      const Edge& e = layout_.edge_at(ei);
      from_.push_back(side(e.iota_from));
      to_.push_back(side(e.iota_to));
    }
  }

  const GraphLayout& layout() const { return layout_; }
  std::size_t rank() const { return layout_.rank(); }

  std::size_t source(const Step& s) const {
    return s.sign > 0 ? layout_.to_vertex(s.edge) : layout_.from_vertex(s.edge);
  }
  std::size_t target(const Step& s) const {
    return s.sign > 0 ? layout_.from_vertex(s.edge) : layout_.to_vertex(s.edge);
  }

  /// For the pattern s y s^-1 with y at target(s): the element of the
  /// vertex group at source(s) it equals, if y lies in the edge image.
  std::optional<IntVector> pinch(const Step& s, const IntVector& y) const {
    const Side& in = s.sign > 0 ? from_[s.edge] : to_[s.edge];
    const Side& out = s.sign > 0 ? to_[s.edge] : from_[s.edge];
    auto c = lattice_solve(in.image, y);
    if (!c) return std::nullopt;
    return out.iota * (in.to_edge * *c);
  }

  /// Rational map x -> iota_out iota_in^-1 x carried by a pinch at s.
  RatMatrix transfer(const Step& s) const {
    const Edge& e = layout_.edge_at(s.edge);
    return s.sign > 0 ? to_rat(e.iota_to) * rat_inverse(e.iota_from)
                      : to_rat(e.iota_from) * rat_inverse(e.iota_to);
  }

  /// Lattice of y at target(s) for which s y s^-1 pinches.
  const Lattice& pinch_lattice(const Step& s) const {
    return s.sign > 0 ? from_[s.edge].image : to_[s.edge].image;
  }

  std::vector<Step> tree_path_from_base(std::size_t v) const {
    std::vector<Step> path;
    while (auto pe = layout_.parent_edge(v)) {
      std::size_t p = layout_.parent(v);
      // step p -> v
      path.push_back(Step{*pe, layout_.to_vertex(*pe) == p ? 1 : -1});
      v = p;
    }
    return {path.rbegin(), path.rend()};
  }

  std::vector<Step> tree_path_to_base(std::size_t v) const {
    auto path = tree_path_from_base(v);
    std::vector<Step> out;
    for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(Step{it->edge, -it->sign});
    return out;
  }

  PathWord empty_path() const {
    PathWord p;
    p.vertices.push_back(layout_.base());
    p.elements.push_back(IntVector(rank(), Integer(0)));
    return p;
  }

  void append_step(PathWord& p, const Step& s) const {
    if (source(s) != p.vertices.back()) throw MalformedPathWord("step does not start at current vertex");
    p.steps.push_back(s);
    p.vertices.push_back(target(s));
    p.elements.push_back(IntVector(rank(), Integer(0)));
  }

  PathWord to_path_word(const GroupWord& w) const {
    PathWord p = empty_path();
    auto walk = [&](const std::vector<Step>& steps) {
      for (const auto& s : steps) append_step(p, s);
    };
    for (const auto& letter : w.letters()) {
      if (const auto* v = std::get_if<VertexLetter>(&letter)) {
        std::size_t vi = layout_.vertex(v->vertex);
        if (v->vec.size() != rank()) throw UnknownSymbol("vertex letter of wrong rank");
        walk(tree_path_from_base(vi));
        p.elements.back() = p.elements.back() + v->vec;
        walk(tree_path_to_base(vi));
      } else {
        const auto& s = std::get<StableLetter>(letter);
        std::size_t ei = layout_.edge(s.edge);
        if (layout_.is_tree_edge(ei)) throw UnknownSymbol("'" + s.edge + "' is a tree edge");
        Step step{ei, s.sign > 0 ? 1 : -1};
        walk(tree_path_from_base(source(step)));
        append_step(p, step);
        walk(tree_path_to_base(target(step)));
      }
    }
    return p;
  }

  void check(const PathWord& p) const {
    if (p.vertices.empty() || p.elements.size() != p.vertices.size() ||
        p.steps.size() + 1 != p.vertices.size())
      throw MalformedPathWord("path word has inconsistent lengths");
    if (p.vertices.front() != layout_.base() || p.vertices.back() != layout_.base())
      throw MalformedPathWord("path word must start and end at the base vertex");
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      const Step& s = p.steps[i];
      if (s.edge >= layout_.graph().edges.size() || (s.sign != 1 && s.sign != -1))
        throw MalformedPathWord("bad edge symbol");
      if (source(s) != p.vertices[i] || target(s) != p.vertices[i + 1])
        throw MalformedPathWord("edge symbol does not match its endpoints");
    }
    for (const auto& x : p.elements)
      if (x.size() != rank()) throw MalformedPathWord("vertex element of wrong rank");
  }

  /// Removes pinches left to right with a stack; the result has no pinch.
  PathWord britton_reduce(const PathWord& p) const {
    check(p);
    PathWord out;
    out.vertices.push_back(p.vertices[0]);
    out.elements.push_back(p.elements[0]);
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      const Step& s = p.steps[i];
      if (!out.steps.empty()) {
        const Step& last = out.steps.back();
        if (last.edge == s.edge && last.sign == -s.sign) {
          if (auto carry = pinch(last, out.elements.back())) {
            out.steps.pop_back();
            out.vertices.pop_back();
            out.elements.pop_back();
            out.elements.back() = out.elements.back() + *carry + p.elements[i + 1];
            continue;
          }
        }
      }
      out.steps.push_back(s);
      out.vertices.push_back(p.vertices[i + 1]);
      out.elements.push_back(p.elements[i + 1]);
    }
    return out;
  }

  PathWord reduce(const GroupWord& w) const { return britton_reduce(to_path_word(w)); }

  static bool is_identity(const PathWord& reduced) {
    return reduced.steps.empty() && is_zero(reduced.elements[0]);
  }

  /// True iff the reduced word is a single element of the base vertex group.
  static bool fixes_base(const PathWord& reduced) { return reduced.steps.empty(); }

  TreeClassification classify(const GroupWord& w) const {
    PathWord p = reduce(w);
    const std::size_t k = p.steps.size();
    if (k == 0) return {TreeKind::Elliptic, 0};
    // Cyclic word: (s_i, y_i) with the corner y_k = x_k + x_0.
    std::vector<Step> steps = p.steps;
    std::vector<IntVector> ys(p.elements.begin() + 1, p.elements.end());
    ys.back() = ys.back() + p.elements[0];
    while (steps.size() >= 2) {
      const Step& first = steps.front();
      const Step& last = steps.back();
      if (first.edge != last.edge || first.sign != -last.sign) break;
      auto carry = pinch(last, ys.back());
      if (!carry) break;
      if (steps.size() == 2) {
        steps.clear();
        break;
      }
      IntVector merged = ys[ys.size() - 2] + *carry + ys.front();
      steps.pop_back();
      ys.pop_back();
      steps.erase(steps.begin());
      ys.erase(ys.begin());
      ys.back() = merged;
    }
    if (steps.empty()) return {TreeKind::Elliptic, 0};
    return {TreeKind::Hyperbolic, steps.size()};
  }

  /// Base-vertex elements fixing every vertex of the geodesic from base to
  /// w.base, as a sublattice of Z^n.
  Lattice path_stabilizer(const GroupWord& w) const {
    PathWord p = reduce(w);
    const std::size_t n = rank();
    Lattice L = Lattice::full(n);
    RatMatrix phi = RatMatrix::identity(n);
    for (const auto& s : p.steps) {
      Step back{s.edge, -s.sign};
      L = lattice_preimage(phi, pinch_lattice(back), L);
      phi = transfer(back) * phi;
    }
    return L;
  }

  /// Tree edges disappear, non-tree edges become stable letters.
  GroupWord to_group_word(const PathWord& p) const {
    GroupWord w;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      w *= GroupWord::vertex(layout_.vertex_id(p.vertices[i]), p.elements[i]);
      if (i < p.steps.size() && !layout_.is_tree_edge(p.steps[i].edge))
        w *= GroupWord::stable(layout_.edge_at(p.steps[i].edge).id, p.steps[i].sign);
    }
    return w;
  }

 private:
  struct Side {
    IntMatrix iota;
    Lattice image;
    IntMatrix to_edge;  // HNF coordinates -> edge-group coordinates
  };

  static Side side(const IntMatrix& iota) {
    auto h = hnf(iota);
    return Side{iota, Lattice::from_generators(iota), h.U};
  }

  GraphLayout layout_;
  std::vector<Side> from_;
  std::vector<Side> to_;
};

inline PathWord to_path_word(const GbsGraph& g, const GroupWord& w) {
  return BassSerre(g).to_path_word(w);
}

inline PathWord britton_reduce(const GbsGraph& g, const PathWord& p) {
  return BassSerre(g).britton_reduce(p);
}

inline TreeClassification classify_tree_action(const GbsGraph& g, const GroupWord& w) {
  return BassSerre(g).classify(w);
}

inline Lattice path_stabilizer(const GbsGraph& g, const GroupWord& w) {
  return BassSerre(g).path_stabilizer(w);
}

/// A vertex of the Bass-Serre tree: coset element . V_vertex.
struct TreeVertex {
  GroupWord element;
  std::string vertex;
};

struct AcylindricityWitness {
  GroupWord gK;
  long long K = 0;
  std::string edge;               // the stable letter used
  std::size_t distance = 0;       // d(base, gK.base)
  TreeVertex x_point, y_point;
  Lattice stabilizer{1};          // path_stabilizer(gK)
  std::vector<GroupWord> elements;
  bool verified = false;
};

/// Elements fixing both base and t^K.base, with d(base, t^K.base) >= R.
inline AcylindricityWitness acylindricity_witnesses(const GbsGraph& g, std::size_t R,
                                                   std::size_t N) {
  BassSerre bs(g);
  const auto& layout = bs.layout();
  if (layout.non_tree_edges().empty())
    throw NoHyperbolicElement("the underlying graph is a tree; no stable letter to use");
  AcylindricityWitness w;
  w.edge = layout.edge_at(layout.non_tree_edges().front()).id;
  GroupWord t = GroupWord::stable(w.edge, 1);
  w.K = 1;
  w.gK = t;
  while (bs.reduce(w.gK).length() < R) {
    ++w.K;
    w.gK *= t;
  }
  w.distance = bs.reduce(w.gK).length();
  w.x_point = TreeVertex{GroupWord(), layout.base_id()};
  w.y_point = TreeVertex{w.gK, layout.base_id()};
  w.stabilizer = bs.path_stabilizer(w.gK);
  IntVector b = w.stabilizer.basis().column(0);
  w.verified = true;
  GroupWord gK_inv = w.gK.inverse();
  for (std::size_t i = 1; i <= N; ++i) {
    GroupWord e = GroupWord::vertex(layout.base_id(), Integer(i) * b);
    bool fixes_x = BassSerre::fixes_base(bs.reduce(e));
    bool fixes_y = BassSerre::fixes_base(bs.reduce(gK_inv * e * w.gK));
    w.verified = w.verified && fixes_x && fixes_y;
    w.elements.push_back(std::move(e));
  }
  return w;
}

}  // namespace gbsn
