#pragma once

#include "gbsn/error.hpp"
#include "gbsn/gog.hpp"

#include <sstream>
#include <string>

namespace gbsn {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Text words such as "t a^2 b^-1 t^-1". Symbols are the generator names of
/// presentation(g); "v:<vertex>:<k>" (k from 1) and "t:<edge-id>" name
/// generators explicitly. An empty string or "1" is the identity.
inline GroupWord parse_word(const Presentation& p, const std::string& text) {
  GroupWord w;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    std::string symbol = token;
    long long exponent = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      symbol = token.substr(0, caret);
      std::string exp = token.substr(caret + 1);
      std::size_t used = 0;
      try {
        exponent = std::stoll(exp, &used);
      } catch (const std::exception&) {
        throw ParseError("bad exponent in '" + token + "'");
      }
      if (used != exp.size()) throw ParseError("bad exponent in '" + token + "'");
    }
    std::optional<std::size_t> gen;
    if (symbol.rfind("v:", 0) == 0) {
      auto colon = symbol.rfind(':');
      if (colon <= 2) throw ParseError("expected v:<vertex>:<k> in '" + token + "'");
      std::string vertex = symbol.substr(2, colon - 2);
      std::size_t k = 0;
      try {
        k = std::stoul(symbol.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError("bad coordinate in '" + token + "'");
      }
      if (k < 1 || k > p.rank) throw UnknownSymbol("coordinate out of range in '" + token + "'");
      gen = p.vertex_generator(vertex, k - 1);
    } else if (symbol.rfind("t:", 0) == 0) {
      gen = p.stable_generator(symbol.substr(2));
      if (!gen) throw UnknownSymbol("'" + symbol.substr(2) + "' is not a stable letter");
    } else {
      for (std::size_t i = 0; i < p.generators.size(); ++i)
        if (p.generators[i].name == symbol) gen = i;
      if (!gen) throw UnknownSymbol("unknown generator '" + symbol + "'");
    }
    const Generator& g = p.generators[*gen];
    if (g.kind == Generator::Kind::Vertex) {
      IntVector x(p.rank, Integer(0));
      x[g.coord] = exponent;
      w *= GroupWord::vertex(g.vertex, x);
    } else {
      w *= GroupWord::stable(g.edge, 1).pow(exponent);
    }
  }
  return w;
}

inline std::string format_word(const Presentation& p, const GroupWord& w) {
  std::string out;
  auto emit = [&](const std::string& name, const Integer& e) {
    if (e == 0) return;
    if (!out.empty()) out += ' ';
    out += name;
    if (e != 1) out += "^" + e.str();
  };
  const auto& letters = w.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (const auto* v = std::get_if<VertexLetter>(&letters[i])) {
      for (std::size_t k = 0; k < v->vec.size(); ++k)
        emit(p.generators[p.vertex_generator(v->vertex, k)].name, v->vec[k]);
      continue;
    }
    const auto& s = std::get<StableLetter>(letters[i]);
    long long e = s.sign;
    while (i + 1 < letters.size()) {
      const auto* next = std::get_if<StableLetter>(&letters[i + 1]);
      if (!next || next->edge != s.edge || next->sign != s.sign) break;
      e += s.sign;
      ++i;
    }
    auto idx = p.stable_generator(s.edge);
    emit(idx ? p.generators[*idx].name : "t:" + s.edge, e);
  }
  return out.empty() ? "1" : out;
}

}  // namespace gbsn
