#pragma once

#include "gbsn/abel.hpp"
#include "gbsn/error.hpp"
#include "gbsn/modular.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbsn {

enum class IsometryType { Elliptic, Parabolic, Loxodromic };

inline const char* to_string(IsometryType t) {
  switch (t) {
    case IsometryType::Parabolic: return "parabolic";
    case IsometryType::Loxodromic: return "loxodromic";
    default: return "elliptic";
  }
}

/// Type of an element acting factor-wise on a product of hyperbolic spaces.
inline IsometryType combine_product_types(const std::vector<IsometryType>& types) {
  if (types.empty()) throw EmptyInput();
  IsometryType out = IsometryType::Elliptic;
  for (auto t : types) {
    if (t == IsometryType::Loxodromic) return t;
    if (t == IsometryType::Parabolic) out = t;
  }
  return out;
}

enum class ProductObstruction { Consistent, ParabolicForbidden };

/// Profiles whose combined type is parabolic cannot occur in a product
/// acylindrical action.
inline ProductObstruction product_acylindrical_obstruction(const std::vector<IsometryType>& types) {
  return combine_product_types(types) == IsometryType::Parabolic
             ? ProductObstruction::ParabolicForbidden
             : ProductObstruction::Consistent;
}

struct Justification {
  std::string field;
  std::string reason;
};

struct ClassificationReport {
  MonodromyReport monodromy;
  BasicCase basic_case = BasicCase::NotBasic;
  bool virtually_hhg = false;
  bool virtually_zn_cross_fr = false;
  bool has_qt = false;
  bool acylindrically_hyperbolic = false;
  std::optional<NeverLoxodromicWitness> witness;
  std::vector<Justification> justification;
};

inline ClassificationReport classify_group(const GbsGraph& g) {
  ClassificationReport r;
  r.monodromy = monodromy_finiteness(g);
  r.basic_case = is_basic_case(g);
  const bool finite = r.monodromy.finite;
  r.virtually_zn_cross_fr = finite;
  r.virtually_hhg = finite;
  r.has_qt = finite;
  r.acylindrically_hyperbolic = false;
  if (finite) {
    r.justification = {
        {"virtually_zn_cross_fr",
         "finite monodromy: the kernel of the modular map has finite index and is Z^n x F_r"},
        {"virtually_hhg", "finite monodromy: virtually Z^n x F_r, which is an HHG"},
        {"has_qt",
         "Z^n x F_r acts on a product of n lines and a tree with quasi-isometrically embedded "
         "orbits, and (QT) passes from a finite-index subgroup to the group"},
    };
  } else {
    r.witness = witness_never_loxodromic(g);
    r.justification = {
        {"virtually_zn_cross_fr", "infinite monodromy: every finite-index subgroup has nontrivial "
                                  "monodromy, so none is Z^n x F_r"},
        {"virtually_hhg",
         "infinite monodromy: no product acylindrical action exists, while every HHG has one"},
        {"has_qt", "infinite monodromy: the witness z is never loxodromic, which rules out (QT)"},
    };
  }
  r.justification.push_back(
      {"acylindrically_hyperbolic",
       "a commensurated Z^n subgroup fixes arbitrarily long tree segments pointwise; no GBS_n "
       "group is acylindrically hyperbolic"});
  if (r.basic_case != BasicCase::NotBasic)
    r.justification.push_back({"basic_case", std::string("decomposition is the basic case ") +
                                                 to_string(r.basic_case) +
                                                 "; the modular map depends on it"});
  if (r.virtually_hhg != r.monodromy.finite || r.has_qt != r.monodromy.finite ||
      r.witness.has_value() == r.monodromy.finite)
    throw std::logic_error("classification report is inconsistent");
  return r;
}

}  // namespace gbsn
