#include "gbsn.hpp"

#include <catch_amalgamated.hpp>

using namespace gbsn;

namespace {

IntMatrix m1(long long x) { return IntMatrix{{Integer(x)}}; }

IntMatrix m2(long long a, long long b, long long c, long long d) {
  return IntMatrix{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}};
}

bool has_rule(const std::vector<Violation>& vs, const std::string& subject, const std::string& rule) {
  for (const auto& v : vs)
    if (v.subject == subject && v.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("validate accepts the catalog", "[gog]") {
  CHECK(validate(leary_minasyan()).empty());
  CHECK(validate(bs(2, 3)).empty());
  CHECK(validate(klein_bottle()).empty());
  CHECK(validate(zn_cross_fr(3, 2)).empty());
}

TEST_CASE("validate reports each broken rule", "[gog]") {
  GbsGraph g = bs(1, 2);
  g.edges[0].iota_from = m1(0);
  auto vs = validate(g);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].subject == "e0");
  CHECK(vs[0].rule == "singular-iota_from");

  GbsGraph split;
  split.rank = 1;
  split.vertices = {"v0", "v1"};
  vs = validate(split);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].rule == "connected");
  CHECK(vs[0].subject == "v1");

  GbsGraph bad;
  bad.rank = 2;
  bad.vertices = {"a", "a"};
  bad.edges.push_back(Edge{"e", "a", "z", m1(1), m2(1, 0, 0, 1)});
  bad.edges.push_back(Edge{"e", "a", "a", m2(1, 0, 0, 1), m2(1, 0, 0, 1)});
  vs = validate(bad);
  CHECK(has_rule(vs, "a", "duplicate-vertex"));
  CHECK(has_rule(vs, "e", "duplicate-edge"));
  CHECK(has_rule(vs, "e", "unknown-endpoint"));
  CHECK(has_rule(vs, "e", "shape-iota_from"));

  GbsGraph empty;
  empty.rank = 0;
  vs = validate(empty);
  CHECK(has_rule(vs, "graph", "rank"));
  CHECK(has_rule(vs, "graph", "nonempty"));
  CHECK_THROWS_AS(require_valid(empty), InvalidGraph);
}

TEST_CASE("spanning tree is breadth-first from the smallest id", "[gog]") {
  CHECK(spanning_tree(bs(1, 2)).empty());

  GbsGraph path;
  path.rank = 1;
  path.vertices = {"v2", "v0", "v1"};
  path.edges = {Edge{"b", "v1", "v2", m1(1), m1(2)}, Edge{"a", "v0", "v1", m1(3), m1(1)}};
  CHECK(spanning_tree(path) == std::set<std::string>{"a", "b"});

  GbsGraph doubled;
  doubled.rank = 1;
  doubled.vertices = {"v1", "v0"};
  doubled.edges = {Edge{"e1", "v0", "v1", m1(1), m1(1)}, Edge{"e0", "v1", "v0", m1(2), m1(1)}};
  CHECK(spanning_tree(doubled) == std::set<std::string>{"e0"});
  GraphLayout layout(doubled);
  CHECK(layout.base_id() == "v0");
  REQUIRE(layout.non_tree_edges().size() == 1);
  CHECK(layout.edge_at(layout.non_tree_edges()[0]).id == "e1");
}

TEST_CASE("group words are freely reduced", "[gog][word]") {
  GroupWord w = GroupWord::vertex("v", int_vector({1, 2})) * GroupWord::vertex("v", int_vector({-1, -2}));
  CHECK(w.empty());
  w = GroupWord::vertex("v", int_vector({1, 0})) * GroupWord::vertex("v", int_vector({0, 3}));
  REQUIRE(w.size() == 1);
  CHECK(std::get<VertexLetter>(w.letters()[0]).vec == int_vector({1, 3}));
  CHECK(GroupWord::vertex("v", int_vector({0, 0})).empty());
  CHECK((GroupWord::stable("e") * GroupWord::stable("e", -1)).empty());
  GroupWord x = GroupWord::stable("e") * GroupWord::vertex("v", int_vector({2})) *
                GroupWord::stable("f", -1);
  CHECK((x * x.inverse()).empty());
  CHECK((x.inverse() * x).empty());
  CHECK(x.pow(3).size() == 9);
  CHECK(x.pow(-2) == x.inverse().pow(2));
  CHECK(GroupWord::stable("e", 3).size() == 3);
  CHECK(GroupWord::vertex("v", int_vector({1})) != GroupWord::vertex("u", int_vector({1})));
}

TEST_CASE("bs(1,2) presentation", "[gog][presentation]") {
  Presentation p = presentation(bs(1, 2));
  REQUIRE(p.generators.size() == 2);
  CHECK(p.generators[0].name == "a");
  CHECK(p.generators[1].name == "t");
  REQUIRE(p.relators.size() == 1);
  // t a t^-1 a^-2
  GroupWord expected = GroupWord::stable("e0", 1) * GroupWord::vertex("v0", int_vector({1})) *
                       GroupWord::stable("e0", -1) * GroupWord::vertex("v0", int_vector({-2}));
  CHECK(p.relators[0].word == expected);
  CHECK(format_word(p, p.relators[0].word) == "t a t^-1 a^-2");
}

TEST_CASE("Leary-Minasyan catalog entry and relators", "[gog][presentation][catalog]") {
  GbsGraph g = leary_minasyan();
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].iota_from == m2(2, 1, -1, 2));
  CHECK(g.edges[0].iota_to == m2(2, -1, 1, 2));
  Presentation p = presentation(g);
  CHECK(p.generators.size() == 3);
  // [a,b], t a^2 b^-1 t^-1 = a^2 b, t a b^2 t^-1 = a^-1 b^2
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[0].kind == Relator::Kind::Commutator);
  CHECK(p.relators[0].word.empty());
  auto rel = [](long long x1, long long y1, long long x2, long long y2) {
    return GroupWord::stable("e0", 1) * GroupWord::vertex("v0", int_vector({x1, y1})) *
           GroupWord::stable("e0", -1) * GroupWord::vertex("v0", int_vector({-x2, -y2}));
  };
  CHECK(p.relators[1].word == rel(2, -1, 2, 1));
  CHECK(p.relators[2].word == rel(1, 2, -1, 2));
  CHECK(format_word(p, p.relators[1].word) == "t a^2 b^-1 t^-1 a^-2 b^-1");
  CHECK(lm_maximal_lattice(leary_minasyan_matrix()) ==
        Lattice::from_generators(g.edges[0].iota_from));
  CHECK(std::string(leary_minasyan_note()).find("(QT)") != std::string::npos);
}

TEST_CASE("Z^2 x F_1 presentation", "[gog][presentation]") {
  Presentation p = presentation(zn_cross_fr(2, 1));
  std::vector<std::string> names;
  for (const auto& g : p.generators) names.push_back(g.name);
  CHECK(names == std::vector<std::string>{"a", "b", "t"});
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[0].commutator == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(format_word(p, p.relators[1].word) == "t a t^-1 a^-1");
  CHECK(format_word(p, p.relators[2].word) == "t b t^-1 b^-1");
}

TEST_CASE("presentations of multi-vertex graphs", "[gog][presentation]") {
  GbsGraph g;
  g.rank = 1;
  g.vertices = {"u", "w"};
  g.edges = {Edge{"e0", "u", "w", m1(2), m1(3)}, Edge{"e1", "w", "u", m1(1), m1(5)},
             Edge{"e2", "u", "u", m1(1), m1(1)}};
  Presentation p = presentation(g);
  std::vector<std::string> names;
  for (const auto& gen : p.generators) names.push_back(gen.name);
  CHECK(names == std::vector<std::string>{"a", "b", "t0", "t1"});
  REQUIRE(p.relators.size() == 3);
  CHECK(p.relators[0].kind == Relator::Kind::TreeEdge);
  CHECK(format_word(p, p.relators[0].word) == "a^2 b^-3");
  CHECK(format_word(p, p.relators[1].word) == "t0 b t0^-1 a^-5");

  GbsGraph many;
  many.rank = 1;
  for (int i = 0; i < 21; ++i) many.vertices.push_back("v" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  for (int i = 1; i < 21; ++i)
    many.edges.push_back(Edge{"e" + std::to_string(100 + i), many.vertices[0], many.vertices[i], m1(1), m1(1)});
  Presentation mp = presentation(many);
  CHECK(mp.generators[18].name == "s");
  CHECK(mp.generators[19].name == "u");

  GbsGraph huge = many;
  huge.rank = 2;
  for (auto& e : huge.edges) e.iota_from = e.iota_to = IntMatrix::identity(2);
  CHECK(presentation(huge).generators[0].name == "x0");
}

TEST_CASE("presentation is deterministic", "[gog][presentation]") {
  GbsGraph g = leary_minasyan();
  CHECK(to_json(presentation(g)).dump() == to_json(presentation(g)).dump());
  GbsGraph shuffled;
  shuffled.rank = 1;
  shuffled.vertices = {"b", "a"};
  shuffled.edges = {Edge{"y", "a", "a", m1(2), m1(3)}, Edge{"x", "b", "a", m1(1), m1(2)}};
  GbsGraph reordered = shuffled;
  std::swap(reordered.edges[0], reordered.edges[1]);
  std::swap(reordered.vertices[0], reordered.vertices[1]);
  CHECK(to_json(presentation(shuffled)).dump() == to_json(presentation(reordered)).dump());
}

TEST_CASE("catalog constructors", "[gog][catalog]") {
  GbsGraph g = bs(2, 3);
  CHECK(g.edges[0].iota_from == m1(2));
  CHECK(g.edges[0].iota_to == m1(3));
  GbsGraph k = klein_bottle();
  CHECK(k.edges[0].iota_from == m1(1));
  CHECK(k.edges[0].iota_to == m1(-1));
  CHECK_THROWS_AS(bs(0, 1), InvalidFamilyParameter);
  CHECK(zn_cross_fr(2, 12).edges.size() == 12);
  CHECK(zn_cross_fr(2, 12).edges[2].id == "e02");
  CHECK(hnn_automorphism(m2(0, -1, 1, 0)).edges[0].iota_to == m2(0, -1, 1, 0));
  CHECK_THROWS_AS(hnn_automorphism(m2(2, 0, 0, 1)), InvalidFamilyParameter);
}

TEST_CASE("lm_general checks its preconditions and indices", "[gog][catalog]") {
  RatMatrix M = leary_minasyan_matrix();
  CHECK_THROWS_AS(lm_general(2, M, IntMatrix::identity(2)), InvalidFamilyParameter);
  CHECK_THROWS_AS(lm_general(2, M, m2(2, 4, -1, -2)), InvalidFamilyParameter);
  CHECK_THROWS_AS(lm_general(3, M, m2(2, 1, -1, 2)), InvalidFamilyParameter);
  RatMatrix singular{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK_THROWS_AS(lm_general(2, singular, IntMatrix::identity(2)), InvalidFamilyParameter);

  // A proper sublattice of the maximal one also works; the edge-group
  // indices are |det B| and |det M| |det B|.
  for (const IntMatrix& B : {m2(2, 1, -1, 2), m2(4, 2, -2, 4), m2(10, 0, -5, 5)}) {
    GbsGraph g = lm_general(2, M, B);
    REQUIRE(validate(g).empty());
    Integer dB = abs(determinant(B));
    CHECK(abs(determinant(g.edges[0].iota_from)) == dB);
    Rat dM = rat_determinant(M);
    CHECK(Rat(abs(determinant(g.edges[0].iota_to))) == Rat(dB) * Rat(abs(dM.num()), dM.den()));
  }
  RatMatrix twice{{Rat(2), Rat(0)}, {Rat(0), Rat(1, 3)}};
  GbsGraph g = lm_general(2, twice, lm_maximal_lattice(twice));
  CHECK(abs(determinant(g.edges[0].iota_from)) == 3);
  CHECK(abs(determinant(g.edges[0].iota_to)) == 2);
}

TEST_CASE("word syntax round trip", "[gog][word]") {
  GbsGraph g = leary_minasyan();
  Presentation p = presentation(g);
  GroupWord w = parse_word(p, "t a^2 b^-1 t^-1");
  CHECK(w == GroupWord::stable("e0") * GroupWord::vertex("v0", int_vector({2, -1})) *
                 GroupWord::stable("e0", -1));
  CHECK(format_word(p, w) == "t a^2 b^-1 t^-1");
  CHECK(parse_word(p, "t:e0^2 v:v0:2^3") == GroupWord::stable("e0", 2) * GroupWord::vertex("v0", int_vector({0, 3})));
  CHECK(parse_word(p, "").empty());
  CHECK(parse_word(p, "1").empty());
  CHECK(format_word(p, GroupWord()) == "1");
  CHECK_THROWS_AS(parse_word(p, "q"), UnknownSymbol);
  CHECK_THROWS_AS(parse_word(p, "a^x"), ParseError);
  CHECK_THROWS_AS(parse_word(p, "v:v0:3"), UnknownSymbol);
}
