#pragma once

#include "gbsn/abel.hpp"
#include "gbsn/actions.hpp"
#include "gbsn/bass_serre.hpp"
#include "gbsn/error.hpp"
#include "gbsn/exact.hpp"
#include "gbsn/gog.hpp"
#include "gbsn/modular.hpp"
#include "gbsn/subgroup.hpp"
#include "gbsn/word_syntax.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace gbsn {

using Json = nlohmann::ordered_json;

// Integers are JSON numbers when they fit in 64 bits, strings otherwise.
inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw ParseError("empty integer string");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer '" + s + "'");
    return Integer(s);
  }
  throw ParseError("expected an integer, got " + j.dump());
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an integer array");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix (array of rows)");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
  }
  return m;
}

inline Json to_json(const Rat& r) { return r.str(); }

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline RatMatrix rat_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected a matrix (array of rows)");
  std::vector<RatVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("expected a matrix row");
    RatVector row;
    for (const auto& x : r) {
      if (x.is_string()) row.push_back(Rat::parse(x.get<std::string>()));
      else row.emplace_back(integer_from_json(x));
    }
    rows.push_back(std::move(row));
  }
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  RatMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
  }
  return m;
}

inline Json to_json(const Lattice& L) {
  return Json{{"ambient_rank", L.ambient_rank()}, {"rank", L.rank()}, {"basis", to_json(L.basis())}};
}

// ---- graphs --------------------------------------------------------------

inline Json to_json(const GbsGraph& g) {
  Json j;
  j["rank"] = g.rank;
  j["vertices"] = g.vertices;
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back(Json{{"id", e.id},
                         {"from", e.from},
                         {"to", e.to},
                         {"iota_from", to_json(e.iota_from)},
                         {"iota_to", to_json(e.iota_to)}});
  j["edges"] = edges;
  return j;
}

/// Structural parse only; call validate() for the graph invariants.
inline GbsGraph graph_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("graph must be a JSON object");
  for (const char* key : {"rank", "vertices", "edges"})
    if (!j.contains(key)) throw ParseError(std::string("graph is missing '") + key + "'");
  GbsGraph g;
  if (!j["rank"].is_number_integer() || j["rank"].get<std::int64_t>() < 0)
    throw ParseError("rank must be a nonnegative integer");
  g.rank = j["rank"].get<std::size_t>();
  if (!j["vertices"].is_array()) throw ParseError("vertices must be an array");
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("vertex ids must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  if (!j["edges"].is_array()) throw ParseError("edges must be an array");
  for (const auto& e : j["edges"]) {
    if (!e.is_object()) throw ParseError("edge must be an object");
    for (const char* key : {"id", "from", "to", "iota_from", "iota_to"})
      if (!e.contains(key)) throw ParseError(std::string("edge is missing '") + key + "'");
    for (const char* key : {"id", "from", "to"})
      if (!e[key].is_string()) throw ParseError(std::string("edge '") + key + "' must be a string");
    g.edges.push_back(Edge{e["id"].get<std::string>(), e["from"].get<std::string>(),
                           e["to"].get<std::string>(), int_matrix_from_json(e["iota_from"]),
                           int_matrix_from_json(e["iota_to"])});
  }
  return g;
}

inline Json to_json(const std::vector<Violation>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(Json{{"subject", v.subject}, {"rule", v.rule}, {"detail", v.detail}});
  return a;
}

// ---- words and presentations ---------------------------------------------

inline Json to_json(const GroupWord& w) {
  Json a = Json::array();
  for (const auto& letter : w.letters()) {
    if (const auto* v = std::get_if<VertexLetter>(&letter))
      a.push_back(Json{{"vertex", v->vertex}, {"vector", to_json(v->vec)}});
    else {
      const auto& s = std::get<StableLetter>(letter);
      a.push_back(Json{{"edge", s.edge}, {"sign", s.sign}});
    }
  }
  return a;
}

inline GroupWord word_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("word must be an array of letters");
  GroupWord w;
  for (const auto& l : j) {
    if (l.contains("vertex") && l.contains("vector") && l["vertex"].is_string())
      w *= GroupWord::vertex(l["vertex"].get<std::string>(), int_vector_from_json(l["vector"]));
    else if (l.contains("edge") && l.contains("sign") && l["edge"].is_string() &&
             l["sign"].is_number_integer() && (l["sign"] == 1 || l["sign"] == -1))
      w *= GroupWord::stable(l["edge"].get<std::string>(), l["sign"].get<int>());
    else
      throw ParseError("bad letter " + l.dump());
  }
  return w;
}

inline const char* relator_kind_name(Relator::Kind k) {
  switch (k) {
    case Relator::Kind::Commutator: return "commutator";
    case Relator::Kind::TreeEdge: return "tree";
    default: return "stable";
  }
}

inline Json to_json(const Presentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    if (g.kind == Generator::Kind::Vertex)
      gens.push_back(Json{{"name", g.name}, {"kind", "vertex"}, {"vertex", g.vertex}, {"coordinate", g.coord}});
    else
      gens.push_back(Json{{"name", g.name}, {"kind", "stable"}, {"edge", g.edge}});
  }
  Json rels = Json::array();
  for (const auto& r : p.relators) {
    Json j{{"kind", relator_kind_name(r.kind)}};
    if (r.kind == Relator::Kind::Commutator) {
      j["generators"] = Json::array({r.commutator.first, r.commutator.second});
    } else {
      j["edge"] = r.edge;
      j["basis_index"] = r.basis_index;
    }
    j["word"] = to_json(r.word);
    j["text"] = r.kind == Relator::Kind::Commutator
                    ? "[" + p.generators[r.commutator.first].name + "," +
                          p.generators[r.commutator.second].name + "]"
                    : format_word(p, r.word);
    rels.push_back(std::move(j));
  }
  return Json{{"rank", p.rank}, {"generators", gens}, {"relators", rels}};
}

inline Presentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("generators") || !j.contains("relators"))
    throw ParseError("presentation needs rank, generators and relators");
  Presentation p;
  p.rank = j["rank"].get<std::size_t>();
  for (const auto& g : j["generators"]) {
    Generator gen;
    gen.name = g.at("name").get<std::string>();
    const std::string kind = g.at("kind").get<std::string>();
    if (kind == "vertex") {
      gen.kind = Generator::Kind::Vertex;
      gen.vertex = g.at("vertex").get<std::string>();
      gen.coord = g.at("coordinate").get<std::size_t>();
    } else if (kind == "stable") {
      gen.kind = Generator::Kind::Stable;
      gen.edge = g.at("edge").get<std::string>();
    } else {
      throw ParseError("unknown generator kind '" + kind + "'");
    }
    p.generators.push_back(std::move(gen));
  }
  for (const auto& r : j["relators"]) {
    Relator rel;
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "commutator") {
      rel.kind = Relator::Kind::Commutator;
      rel.commutator = {r.at("generators").at(0).get<std::size_t>(),
                        r.at("generators").at(1).get<std::size_t>()};
    } else if (kind == "tree" || kind == "stable") {
      rel.kind = kind == "tree" ? Relator::Kind::TreeEdge : Relator::Kind::StableLetter;
      rel.edge = r.at("edge").get<std::string>();
      rel.basis_index = r.at("basis_index").get<std::size_t>();
    } else {
      throw ParseError("unknown relator kind '" + kind + "'");
    }
    rel.word = word_from_json(r.at("word"));
    p.relators.push_back(std::move(rel));
  }
  return p;
}

// ---- reports -------------------------------------------------------------

inline Json to_json(const ModularData& d) {
  Json psi = Json::object(), stable = Json::object();
  for (const auto& [v, m] : d.psi) psi[v] = to_json(m);
  for (const auto& [e, m] : d.stable_matrices) stable[e] = to_json(m);
  return Json{{"base_vertex", d.base_vertex}, {"psi", psi}, {"stable_matrices", stable}};
}

inline Json to_json(const MonodromyReport& r) {
  if (r.finite) return Json{{"verdict", "finite"}, {"order", to_json(r.order)}, {"trivial", r.trivial}};
  return Json{{"verdict", "infinite"}, {"elements_enumerated", r.elements_enumerated}};
}

inline Json to_json(const AbelianizationReport& r) {
  Json t = Json::array();
  for (const auto& d : r.torsion_divisors) t.push_back(to_json(d));
  return Json{{"free_rank", r.free_rank}, {"torsion_divisors", t}};
}

inline Json to_json(const KernelSubspace& k) {
  Json b = Json::array();
  for (const auto& v : k.basis) b.push_back(to_json(v));
  return Json{{"dimension", k.dimension()}, {"basis", b}};
}

inline Json to_json(const FiniteAbelianQuotient& q) {
  Json d = Json::array(), imgs = Json::array();
  for (const auto& x : q.divisors) d.push_back(to_json(x));
  for (const auto& v : q.images) imgs.push_back(to_json(v));
  return Json{{"divisors", d}, {"images", imgs}};
}

inline Json to_json(const InducedDecomposition& d) {
  Json vo = Json::object(), eo = Json::object(), lifts = Json::object(), trans = Json::object();
  for (const auto& [id, o] : d.vertex_origin) vo[id] = Json{{"vertex", o.id}, {"coset", to_json(o.coset)}};
  for (const auto& [id, o] : d.edge_origin) eo[id] = Json{{"edge", o.id}, {"coset", to_json(o.coset)}};
  for (const auto& [id, w] : d.vertex_lift) lifts[id] = to_json(w);
  for (std::size_t i = 0; i < d.generators.size(); ++i)
    trans[d.generators[i].name] = to_json(d.generator_translation[i]);
  return Json{{"index", to_json(d.index)},
              {"subgroup_graph", to_json(d.subgroup_graph)},
              {"base_lattice", to_json(d.base_lattice)},
              {"vertex_origin", vo},
              {"edge_origin", eo},
              {"vertex_lifts", lifts},
              {"generator_translation", trans}};
}

inline Json to_json(const ConsistencyReport& r) {
  Json j{{"pass", r.pass}, {"conjugator", to_json(r.conjugator)}};
  if (r.counterexample) {
    j["counterexample"] = *r.counterexample;
    j["expected"] = to_json(r.expected);
    j["actual"] = to_json(r.actual);
  }
  return j;
}

inline Json to_json(const NeverLoxodromicWitness& w) {
  return Json{{"z", to_json(w.z)},
              {"selection", "smallest max-norm, first nonzero entry positive, then lexicographic"},
              {"certificate",
               Json{{"quotient", to_json(w.quotient)},
                    {"subgroup_index", to_json(w.decomposition.index)},
                    {"subgroup_graph", to_json(w.decomposition.subgroup_graph)},
                    {"subgroup_base_lattice", to_json(w.decomposition.base_lattice)},
                    {"subgroup_R", to_json(w.subgroup_R)},
                    {"trivial_lattice", to_json(w.trivial_lattice)},
                    {"z_in_subgroup_coordinates", to_json(w.z_subgroup)},
                    {"subgroup_word", to_json(w.subgroup_word)},
                    {"trivial_in_free_abelianization", w.trivial_in_subgroup}}}};
}

inline Json to_json(const ClassificationReport& r) {
  Json just = Json::array();
  for (const auto& j : r.justification) just.push_back(Json{{"field", j.field}, {"reason", j.reason}});
  Json j{{"monodromy", to_json(r.monodromy)},
         {"basic_case", to_string(r.basic_case)},
         {"virtually_hhg", r.virtually_hhg},
         {"virtually_zn_cross_fr", r.virtually_zn_cross_fr},
         {"has_qt", r.has_qt},
         {"acylindrically_hyperbolic", r.acylindrically_hyperbolic}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["justification"] = just;
  return j;
}

inline Json to_json(const BassSerre& bs, const PathWord& p) {
  Json a = Json::array();
  const auto& layout = bs.layout();
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    a.push_back(Json{{"vertex", layout.vertex_id(p.vertices[i])}, {"vector", to_json(p.elements[i])}});
    if (i < p.steps.size())
      a.push_back(Json{{"edge", layout.edge_at(p.steps[i].edge).id}, {"sign", p.steps[i].sign}});
  }
  return a;
}

inline Json to_json(const TreeClassification& c) {
  return Json{{"kind", c.kind == TreeKind::Elliptic ? "elliptic" : "hyperbolic"},
              {"translation_length", c.translation_length}};
}

}  // namespace gbsn
