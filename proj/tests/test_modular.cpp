#include "gbsn.hpp"
#include "gbsn/random.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace gbsn;

namespace {

IntMatrix m1(long long x) { return IntMatrix{{Integer(x)}}; }

IntMatrix m2(long long a, long long b, long long c, long long d) {
  return IntMatrix{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}};
}

RatMatrix r2(Rat a, Rat b, Rat c, Rat d) { return RatMatrix{{a, b}, {c, d}}; }

// Order of a single matrix by repeated multiplication.
std::optional<std::size_t> matrix_order(const RatMatrix& m, std::size_t limit) {
  RatMatrix p = m;
  for (std::size_t k = 1; k <= limit; ++k) {
    if (p.is_identity()) return k;
    p = p * m;
  }
  return std::nullopt;
}

// Legendre-style oracle for the Minkowski bound.
Integer minkowski_oracle(long long n) {
  Integer out = 1;
  for (long long p = 2; p <= n + 1; ++p) {
    bool prime = true;
    for (long long d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
    if (!prime) continue;
    long long e = 0;
    for (long long k = 0;; ++k) {
      long long pk = 1;
      for (long long i = 0; i < k; ++i) pk *= p;
      long long term = n / ((p - 1) * pk);
      if (term == 0) break;
      e += term;
    }
    for (long long i = 0; i < e; ++i) out *= p;
  }
  return out;
}

}  // namespace

TEST_CASE("Leary-Minasyan stable matrix is the rotation by (3+4i)/5", "[modular]") {
  auto d = modular_data(leary_minasyan());
  REQUIRE(d.stable_matrices.size() == 1);
  CHECK(d.stable_matrices.at("e0") == r2(Rat(3, 5), Rat(-4, 5), Rat(4, 5), Rat(3, 5)));
  // t a^5 t^-1 = a^3 b^4
  RatVector img = d.stable_matrices.at("e0") * to_rat(int_vector({5, 0}));
  CHECK(img == to_rat(int_vector({3, 4})));
}

TEST_CASE("stable matrices of the small families", "[modular]") {
  CHECK(modular_data(bs(1, 2)).stable_matrices.at("e0") == RatMatrix{{Rat(2)}});
  CHECK(modular_data(bs(2, 3)).stable_matrices.at("e0") == RatMatrix{{Rat(3, 2)}});
  CHECK(modular_data(klein_bottle()).stable_matrices.at("e0") == RatMatrix{{Rat(-1)}});
  for (const auto& [id, m] : modular_data(zn_cross_fr(2, 3)).stable_matrices)
    CHECK(m.is_identity());
}

TEST_CASE("modular images of words", "[modular]") {
  GbsGraph g = bs(1, 2);
  CHECK(modular_image(g, GroupWord()).is_identity());
  CHECK(modular_image(g, GroupWord::stable("e0", 2)) == RatMatrix{{Rat(4)}});
  CHECK(modular_image(g, GroupWord::stable("e0", -1)) == RatMatrix{{Rat(1, 2)}});
  CHECK(modular_image(g, GroupWord::vertex("v0", int_vector({7}))).is_identity());
  CHECK_THROWS_AS(modular_image(g, GroupWord::stable("nope")), UnknownSymbol);
  CHECK_THROWS_AS(modular_image(g, GroupWord::vertex("nope", int_vector({1}))), UnknownSymbol);

  GbsGraph tree;
  tree.rank = 1;
  tree.vertices = {"u", "w"};
  tree.edges = {Edge{"e", "u", "w", m1(2), m1(3)}};
  CHECK_THROWS_AS(modular_image(tree, GroupWord::stable("e")), UnknownSymbol);
  CHECK(modular_image(tree, GroupWord::vertex("w", int_vector({1}))).is_identity());
}

TEST_CASE("a tree edge contributes through the base path", "[modular]") {
  // u --(2,3)--> w, loop at w with (1,5): stable matrix seen from u is 5.
  GbsGraph g;
  g.rank = 1;
  g.vertices = {"u", "w"};
  g.edges = {Edge{"a", "u", "w", m1(2), m1(3)}, Edge{"b", "w", "w", m1(1), m1(5)}};
  auto d = modular_data(g);
  CHECK(d.psi.at("w") == RatMatrix{{Rat(2, 3)}});
  CHECK(d.stable_matrices.at("b") == RatMatrix{{Rat(5)}});
}

TEST_CASE("minkowski bound", "[modular]") {
  CHECK(minkowski_bound(1) == 2);
  CHECK(minkowski_bound(2) == 24);
  CHECK(minkowski_bound(3) == 48);
  for (long long n = 1; n <= 8; ++n) CHECK(minkowski_bound(n) == minkowski_oracle(n));
  CHECK_THROWS_AS(minkowski_bound(0), InvalidFamilyParameter);
}

TEST_CASE("monodromy verdicts on catalog entries", "[modular][monodromy]") {
  auto lm = monodromy_finiteness(leary_minasyan());
  CHECK_FALSE(lm.finite);
  CHECK(lm.elements_enumerated == 25);
  auto b = monodromy_finiteness(bs(1, 2));
  CHECK_FALSE(b.finite);
  CHECK(b.elements_enumerated == 3);
  auto k = monodromy_finiteness(klein_bottle());
  CHECK(k.finite);
  CHECK(k.order == 2);
  CHECK_FALSE(k.trivial);
  auto z = monodromy_finiteness(zn_cross_fr(2, 5));
  CHECK(z.finite);
  CHECK(z.trivial);
  CHECK(z.order == 1);
  CHECK(monodromy_finiteness(bs(2, -2)).order == 2);
}

TEST_CASE("planted finite monodromy matches brute force order", "[modular][monodromy]") {
  for (const IntMatrix& M : {m2(0, -1, 1, 0), m2(1, 0, 0, -1), m2(1, -1, 1, 0), m2(0, 1, -1, -1)}) {
    auto report = monodromy_finiteness(hnn_automorphism(M));
    auto order = matrix_order(to_rat(M), 100);
    REQUIRE(order);
    CHECK(report.finite);
    CHECK(report.order == *order);
  }
  CHECK_FALSE(monodromy_finiteness(hnn_automorphism(m2(1, 1, 0, 1))).finite);
}

TEST_CASE("finite closure is a group of order dividing the bound", "[modular][monodromy]") {
  // Dihedral group of order 8 generated by a rotation and a reflection.
  std::vector<RatMatrix> gens{to_rat(m2(0, -1, 1, 0)), to_rat(m2(1, 0, 0, -1))};
  auto report = monodromy_closure(gens, 2);
  REQUIRE(report.finite);
  CHECK(report.order == 8);
  CHECK(minkowski_bound(2) % report.order == 0);
  std::set<std::string> keys;
  for (const auto& e : report.elements) keys.insert(matrix_key(e));
  for (const auto& a : report.elements)
    for (const auto& b : report.elements) CHECK(keys.count(matrix_key(a * b)) == 1);

  // Generator order does not change the verdict.
  std::reverse(gens.begin(), gens.end());
  CHECK(monodromy_closure(gens, 2).order == 8);
  CHECK(monodromy_closure({}, 3).trivial);
}

TEST_CASE("modular map is a homomorphism and kills relators", "[modular][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    GbsGraph g = random_graph(rng);
    REQUIRE(validate(g).empty());
    GraphLayout layout(g);
    auto d = modular_data(layout);
    GroupWord u = random_word(rng, layout, 6), v = random_word(rng, layout, 6);
    CHECK(modular_image(layout, d, u * v) == modular_image(layout, d, u) * modular_image(layout, d, v));
    CHECK(modular_image(layout, d, u.inverse()) == rat_inverse(modular_image(layout, d, u)));
    for (const auto& rel : presentation(g).relators)
      CHECK(modular_image(layout, d, rel.word).is_identity());
  }
}

TEST_CASE("changing the base vertex conjugates the modular map", "[modular][property]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    GbsGraph g = random_graph(rng);
    GraphLayout layout(g);
    auto d0 = modular_data(layout);
    for (const auto& v : g.vertices) {
      auto dv = modular_data(layout, v);
      const RatMatrix& P = d0.psi.at(v);
      for (const auto& [id, m] : d0.stable_matrices) {
        const RatMatrix& mv = dv.stable_matrices.at(id);
        CHECK(characteristic_polynomial(m) == characteristic_polynomial(mv));
        CHECK(P * mv == m * P);
      }
    }
  }
}

TEST_CASE("verdict ignores edge and vertex order", "[modular][property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    GbsGraph g = random_graph(rng);
    GbsGraph h = g;
    std::shuffle(h.edges.begin(), h.edges.end(), rng);
    std::shuffle(h.vertices.begin(), h.vertices.end(), rng);
    auto a = monodromy_finiteness(g), b = monodromy_finiteness(h);
    CHECK(a.finite == b.finite);
    CHECK(a.order == b.order);
  }
}

TEST_CASE("basic cases", "[modular]") {
  GbsGraph single;
  single.rank = 2;
  single.vertices = {"v"};
  CHECK(is_basic_case(single) == BasicCase::Zn);

  GbsGraph line;
  line.rank = 1;
  line.vertices = {"a", "b", "c"};
  line.edges = {Edge{"x", "a", "b", m1(1), m1(4)}, Edge{"y", "c", "b", m1(-1), m1(3)}};
  CHECK(is_basic_case(line) == BasicCase::Zn);

  CHECK(is_basic_case(klein_bottle()) == BasicCase::ZnSemidirectZ);
  CHECK(is_basic_case(hnn_automorphism(m2(0, -1, 1, 0))) == BasicCase::ZnSemidirectZ);

  GbsGraph amalgam;
  amalgam.rank = 1;
  amalgam.vertices = {"a", "b"};
  amalgam.edges = {Edge{"x", "a", "b", m1(2), m1(2)}};
  CHECK(is_basic_case(amalgam) == BasicCase::IndexTwoAmalgam);

  CHECK(is_basic_case(bs(1, 2)) == BasicCase::NotBasic);
  CHECK(is_basic_case(leary_minasyan()) == BasicCase::NotBasic);
  CHECK(is_basic_case(zn_cross_fr(1, 2)) == BasicCase::NotBasic);
  CHECK(std::string(to_string(BasicCase::IndexTwoAmalgam)).size() > 0);
}
