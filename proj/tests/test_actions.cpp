#include "gbsn.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace gbsn;

namespace {

using T = IsometryType;
constexpr T kTypes[] = {T::Elliptic, T::Parabolic, T::Loxodromic};

// Any loxodromic factor makes the product loxodromic; otherwise any
// parabolic factor makes it parabolic.
T table(const std::vector<T>& ts) {
  bool lox = false, par = false;
  for (T t : ts) {
    lox = lox || t == T::Loxodromic;
    par = par || t == T::Parabolic;
  }
  return lox ? T::Loxodromic : par ? T::Parabolic : T::Elliptic;
}

IntMatrix m2(long long a, long long b, long long c, long long d) {
  return IntMatrix{{Integer(a), Integer(b)}, {Integer(c), Integer(d)}};
}

}  // namespace

TEST_CASE("product types for triples match the table", "[actions]") {
  int rows = 0;
  for (T a : kTypes)
    for (T b : kTypes)
      for (T c : kTypes) {
        std::vector<T> ts{a, b, c};
        CHECK(combine_product_types(ts) == table(ts));
        auto expected = table(ts) == T::Parabolic ? ProductObstruction::ParabolicForbidden
                                                  : ProductObstruction::Consistent;
        CHECK(product_acylindrical_obstruction(ts) == expected);
        ++rows;
      }
  CHECK(rows == 27);
}

TEST_CASE("product types are order independent and idempotent", "[actions]") {
  for (T a : kTypes)
    for (T b : kTypes)
      for (T c : kTypes) {
        std::vector<T> ts{a, b, c};
        std::sort(ts.begin(), ts.end());
        T first = combine_product_types(ts);
        do {
          CHECK(combine_product_types(ts) == first);
        } while (std::next_permutation(ts.begin(), ts.end()));
        std::vector<T> doubled = ts;
        doubled.insert(doubled.end(), ts.begin(), ts.end());
        CHECK(combine_product_types(doubled) == first);
      }
  for (T a : kTypes) CHECK(combine_product_types({a}) == a);
}

TEST_CASE("product obstruction examples", "[actions]") {
  CHECK(product_acylindrical_obstruction({T::Parabolic, T::Elliptic}) ==
        ProductObstruction::ParabolicForbidden);
  CHECK(product_acylindrical_obstruction({T::Loxodromic, T::Parabolic}) ==
        ProductObstruction::Consistent);
  CHECK(product_acylindrical_obstruction({T::Elliptic}) == ProductObstruction::Consistent);
  CHECK_THROWS_AS(combine_product_types({}), EmptyInput);
  CHECK_THROWS_AS(product_acylindrical_obstruction({}), EmptyInput);
  CHECK(std::string(to_string(T::Loxodromic)) == "loxodromic");
}

TEST_CASE("classification of the quasi-isometric pair", "[actions]") {
  auto lm = classify_group(leary_minasyan());
  CHECK_FALSE(lm.virtually_hhg);
  CHECK_FALSE(lm.has_qt);
  CHECK_FALSE(lm.virtually_zn_cross_fr);
  CHECK_FALSE(lm.acylindrically_hyperbolic);
  REQUIRE(lm.witness);
  CHECK(lm.witness->z == int_vector({0, 2}));

  auto z = classify_group(zn_cross_fr(2, 5));
  CHECK(z.virtually_hhg);
  CHECK(z.has_qt);
  CHECK(z.virtually_zn_cross_fr);
  CHECK_FALSE(z.acylindrically_hyperbolic);
  CHECK_FALSE(z.witness);

  auto b = classify_group(bs(1, 2));
  CHECK_FALSE(b.virtually_hhg);
  CHECK(b.witness);
}

TEST_CASE("classification report invariants", "[actions]") {
  for (const GbsGraph& g : {leary_minasyan(), zn_cross_fr(1, 2), bs(2, 3), klein_bottle(),
                            hnn_automorphism(m2(1, -1, 1, 0)), hnn_automorphism(m2(2, 1, 1, 1))}) {
    auto r = classify_group(g);
    CHECK(r.virtually_hhg == r.monodromy.finite);
    CHECK(r.has_qt == r.monodromy.finite);
    CHECK(r.virtually_zn_cross_fr == r.monodromy.finite);
    CHECK(r.witness.has_value() != r.monodromy.finite);
    CHECK_FALSE(r.acylindrically_hyperbolic);
    std::set<std::string> fields;
    for (const auto& j : r.justification) fields.insert(j.field);
    for (const char* f : {"virtually_hhg", "has_qt", "virtually_zn_cross_fr", "acylindrically_hyperbolic"})
      CHECK(fields.count(f) == 1);
  }
}

TEST_CASE("verdicts agree on finite-index subgroups", "[actions]") {
  for (const GbsGraph& g : {klein_bottle(), bs(1, 2), leary_minasyan(), bs(2, -2)}) {
    auto q = mod2_quotient(g);
    auto d = induced_decomposition(g, q, {});
    auto a = classify_group(g), b = classify_group(d.subgroup_graph);
    CHECK(a.virtually_hhg == b.virtually_hhg);
    CHECK(a.has_qt == b.has_qt);
    CHECK(a.virtually_zn_cross_fr == b.virtually_zn_cross_fr);
    CHECK(a.acylindrically_hyperbolic == b.acylindrically_hyperbolic);
  }
}
