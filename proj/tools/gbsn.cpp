// gbsn: command-line front end for the GBS_n library. One verb per call,
// one JSON document on stdout.

#include "gbsn.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gbsn;

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string> kVerbs = {
    "validate", "present",       "modular",    "monodromy",  "abelianize",
    "kernel-R", "classify",      "witness",    "reduce",     "tree-classify",
    "stabilizer", "acyl-witness", "subgroup",  "catalog",    "campaign"};

const std::vector<std::string> kCatalog = {"bs", "leary-minasyan", "lm-general", "zn-cross-fr",
                                           "klein-bottle", "hnn-automorphism"};

struct Options {
  std::string verb;
  std::string input;
  std::string catalog;
  long long m = 1, n = 2;
  std::size_t rank = 2, r = 1;
  std::string matrix, lattice = "max", automorphism;
  std::string word;
  std::size_t R = 3, N = 5;
  std::string kernel;
  bool reparse = false;
  std::uint64_t seed = 1;
  std::size_t count = 500;
};

// Exit 2 carries a JSON body; exit 1 is malformed input or a library error.
struct ValidationFailure {
  Json body;
};

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return "fnv1a64:" + os.str();
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// "a,b;c,d" -> rows
std::vector<std::vector<std::string>> split_matrix(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<std::string> cells;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

RatMatrix parse_rat_matrix(const std::string& text) {
  auto rows = split_matrix(text);
  if (rows.empty()) throw ParseError("empty matrix");
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ParseError("ragged matrix '" + text + "'");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      try {
        m(i, j) = Rat::parse(rows[i][j]);
      } catch (const Error&) {
        throw ParseError("bad matrix entry '" + rows[i][j] + "'");
      }
    }
  }
  return m;
}

IntMatrix parse_int_matrix(const std::string& text) {
  RatMatrix m = parse_rat_matrix(text);
  if (!is_integral(m)) throw ParseError("matrix '" + text + "' must be integral");
  return to_int(m);
}

GbsGraph catalog_graph(const Options& o) {
  if (o.catalog == "bs") return bs(o.m, o.n);
  if (o.catalog == "leary-minasyan") return leary_minasyan();
  if (o.catalog == "klein-bottle") return klein_bottle();
  if (o.catalog == "zn-cross-fr") return zn_cross_fr(o.rank, o.r);
  if (o.catalog == "hnn-automorphism") {
    if (o.automorphism.empty()) throw ParseError("hnn-automorphism needs --automorphism");
    return hnn_automorphism(parse_int_matrix(o.automorphism));
  }
  if (o.catalog == "lm-general") {
    if (o.matrix.empty()) throw ParseError("lm-general needs --matrix");
    RatMatrix M = parse_rat_matrix(o.matrix);
    if (o.lattice == "max") return lm_general(o.rank, M, lm_maximal_lattice(M));
    return lm_general(o.rank, M, parse_int_matrix(o.lattice));
  }
  throw ParseError("unknown catalog entry '" + o.catalog + "'");
}

struct Loaded {
  GbsGraph graph;
  std::string hash;
};

Loaded load_graph(const Options& o) {
  Loaded l;
  if (!o.catalog.empty()) {
    l.graph = catalog_graph(o);
    l.hash = fnv1a(to_json(l.graph).dump());
  } else {
    if (o.input.empty()) throw ParseError("an input file or --catalog is required");
    std::string text = read_input(o.input);
    l.hash = fnv1a(text);
    l.graph = graph_from_json(parse_json(text));
  }
  auto violations = validate(l.graph);
  if (!violations.empty())
    throw ValidationFailure{Json{{"valid", false}, {"violations", to_json(violations)}}};
  return l;
}

Json envelope(const Options& o, const std::string& hash, Json result) {
  return Json{{"tool", "gbsn"}, {"version", kVersion}, {"verb", o.verb},
              {"input_hash", hash}, {"result", std::move(result)}};
}

std::vector<IntVector> parse_kernel(const std::string& text) {
  std::vector<IntVector> out;
  if (text.empty()) return out;
  for (const auto& row : split_matrix(text)) {
    IntVector v;
    for (const auto& c : row) {
      try {
        v.emplace_back(std::stoll(c));
      } catch (const std::exception&) {
        throw ParseError("bad subgroup generator entry '" + c + "'");
      }
    }
    out.push_back(v);
  }
  return out;
}

Json campaign(const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::size_t fab = 0, rank_identity = 0, subspace = 0;
  for (std::size_t i = 0; i < o.count; ++i) {
    GbsGraph g = random_graph(rng);
    GraphLayout layout(g);
    try {
      auto R = kernel_subspace_R(g);
      if ((R.dimension() == 0) != monodromy_finiteness(g).trivial) ++fab;
      auto ab = abelianization(g);
      if (ab.free_rank != layout.non_tree_edges().size() + g.rank - R.dimension()) ++rank_identity;
    } catch (const std::logic_error&) {
      ++subspace;
    }
  }
  return Json{{"seed", o.seed},
              {"instances", o.count},
              {"zero_R_vs_trivial_monodromy_counterexamples", fab},
              {"rank_identity_failures", rank_identity},
              {"subspace_identity_failures", subspace}};
}

Json execute(const Options& o, std::string& hash) {
  if (o.verb == "catalog" && o.catalog.empty()) {
    hash = fnv1a("");
    return Json{{"entries", kCatalog}};
  }
  if (o.verb == "campaign") {
    hash = fnv1a("campaign:" + std::to_string(o.seed) + ":" + std::to_string(o.count));
    return campaign(o);
  }
  if (o.verb == "present" && o.reparse) {
    Json doc = parse_json(read_input(o.input));
    if (!doc.contains("result") || !doc["result"].contains("presentation"))
      throw ParseError("not a present document");
    hash = doc.value("input_hash", std::string());
    return Json{{"presentation", to_json(presentation_from_json(doc["result"]["presentation"]))}};
  }
  if (o.verb == "validate") {
    Loaded l = load_graph(o);
    hash = l.hash;
    return Json{{"valid", true}, {"violations", Json::array()}};
  }

  Loaded l = load_graph(o);
  hash = l.hash;
  const GbsGraph& g = l.graph;
  auto need_word = [&]() {
    if (o.word.empty() && o.verb != "reduce") throw ParseError("--word is required");
    return parse_word(presentation(g), o.word);
  };

  if (o.verb == "catalog") return to_json(g);
  if (o.verb == "present") return Json{{"presentation", to_json(presentation(g))}};
  if (o.verb == "modular") {
    Json j = to_json(modular_data(g));
    j["basic_case"] = to_string(is_basic_case(g));
    return j;
  }
  if (o.verb == "monodromy") return to_json(monodromy_finiteness(g));
  if (o.verb == "abelianize") return to_json(abelianization(g));
  if (o.verb == "kernel-R") {
    Json j = to_json(kernel_subspace_R(g));
    j["trivial_sublattice_of_base"] = to_json(trivial_sublattice_of_base(g));
    return j;
  }
  if (o.verb == "classify") return to_json(classify_group(g));
  if (o.verb == "witness") {
    auto w = witness_never_loxodromic(g);
    return Json{{"witness", w ? to_json(*w) : Json(nullptr)}};
  }
  if (o.verb == "reduce") {
    Presentation p = presentation(g);
    GroupWord w = need_word();
    BassSerre bs(g);
    PathWord path = bs.to_path_word(w);
    PathWord red = bs.britton_reduce(path);
    return Json{{"word", format_word(p, w)},
                {"path_word", to_json(bs, path)},
                {"reduced", to_json(bs, red)},
                {"reduced_word", format_word(p, bs.to_group_word(red))},
                {"edge_count", red.length()},
                {"identity", BassSerre::is_identity(red)}};
  }
  if (o.verb == "tree-classify") return to_json(classify_tree_action(g, need_word()));
  if (o.verb == "stabilizer") {
    Lattice L = path_stabilizer(g, need_word());
    Json j = to_json(L);
    j["index"] = to_json(L.index());
    return j;
  }
  if (o.verb == "acyl-witness") {
    Presentation p = presentation(g);
    auto w = acylindricity_witnesses(g, o.R, o.N);
    Json elements = Json::array();
    for (const auto& e : w.elements) elements.push_back(format_word(p, e));
    return Json{{"gK", format_word(p, w.gK)},
                {"K", w.K},
                {"distance", w.distance},
                {"x_point", Json{{"element", format_word(p, w.x_point.element)}, {"vertex", w.x_point.vertex}}},
                {"y_point", Json{{"element", format_word(p, w.y_point.element)}, {"vertex", w.y_point.vertex}}},
                {"stabilizer", to_json(w.stabilizer)},
                {"elements", elements},
                {"verified", w.verified}};
  }
  if (o.verb == "subgroup") {
    auto q = mod2_quotient(g);
    auto K = parse_kernel(o.kernel);
    auto d = induced_decomposition(g, q, K);
    auto report = restricted_modular_consistency(g, d);
    return Json{{"quotient", to_json(q)},
                {"kernel_generators", [&] {
                   Json a = Json::array();
                   for (const auto& k : K) a.push_back(to_json(k));
                   return a;
                 }()},
                {"decomposition", to_json(d)},
                {"consistency", to_json(report)},
                {"subgroup_monodromy", to_json(monodromy_finiteness(d.subgroup_graph))}};
  }
  throw ParseError("unhandled verb '" + o.verb + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Generalized Baumslag-Solitar groups of rank n"};
  Options o;
  app.add_option("verb", o.verb, "what to compute")->required()->check(CLI::IsMember(kVerbs));
  app.add_option("input", o.input, "graph JSON file ('-' for stdin)");
  app.add_option("--catalog", o.catalog, "named example instead of an input file")
      ->check(CLI::IsMember(kCatalog));
  app.add_option("--m", o.m, "bs: exponent m");
  app.add_option("--n", o.n, "bs: exponent n");
  app.add_option("--rank", o.rank, "lm-general, zn-cross-fr: rank");
  app.add_option("--r", o.r, "zn-cross-fr: number of loops");
  app.add_option("--matrix", o.matrix, "lm-general: rational matrix 'a,b;c,d'");
  app.add_option("--lattice", o.lattice, "lm-general: basis columns 'a,b;c,d' or 'max'");
  app.add_option("--automorphism", o.automorphism, "hnn-automorphism: unimodular matrix");
  app.add_option("--word", o.word, "word such as 't a^2 b^-1 t^-1'");
  app.add_option("--R", o.R, "acyl-witness: separation");
  app.add_option("--N", o.N, "acyl-witness: number of elements");
  app.add_option("--kernel", o.kernel, "subgroup: generators of K in the mod-2 quotient, 'x,y;z,w'");
  app.add_flag("--reparse", o.reparse, "present: re-emit a previous present document");
  app.add_option("--seed", o.seed, "campaign: random seed");
  app.add_option("--count", o.count, "campaign: number of random graphs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << Json{{"error", "usage"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }

  std::string hash;
  try {
    Json result = execute(o, hash);
    std::cout << envelope(o, hash, std::move(result)).dump(2) << "\n";
    return 0;
  } catch (const ValidationFailure& v) {
    std::cout << envelope(o, hash, v.body).dump(2) << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cout << Json{{"error", "malformed input"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const Json::exception& e) {
    std::cout << Json{{"error", "malformed input"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", "failed"}, {"message", e.what()}}.dump(2) << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
