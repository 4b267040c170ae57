#pragma once

#include "gbsn/exact.hpp"
#include "gbsn/gog.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace gbsn {

struct RandomGraphOptions {
  std::size_t max_rank = 3;
  std::size_t max_vertices = 3;
  std::size_t max_edges = 4;
  int entry_bound = 3;  // entries drawn from [-bound, bound]
};

inline IntMatrix random_nonsingular(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> entry(-bound, bound);
  while (true) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
    if (determinant(m) != 0) return m;
  }
}

/// A connected graph: random spanning tree first, then extra edges (loops
/// and multi-edges allowed). Edge ids are shuffled so the deterministic
/// spanning tree is not always the construction tree.
inline GbsGraph random_graph(std::mt19937_64& rng, const RandomGraphOptions& opt = {}) {
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  GbsGraph g;
  g.rank = pick(1, opt.max_rank);
  const std::size_t nv = pick(1, opt.max_vertices);
  const std::size_t ne = pick(nv - 1, std::max(nv - 1, opt.max_edges));
  for (std::size_t i = 0; i < nv; ++i) g.vertices.push_back("v" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  for (std::size_t v = 1; v < nv; ++v) {
    std::size_t u = pick(0, v - 1);
    ends.push_back(pick(0, 1) ? std::make_pair(u, v) : std::make_pair(v, u));
  }
  while (ends.size() < ne) ends.emplace_back(pick(0, nv - 1), pick(0, nv - 1));
  std::vector<std::size_t> ids(ends.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  for (std::size_t i = 0; i < ends.size(); ++i)
    g.edges.push_back(Edge{"e" + std::to_string(ids[i]), g.vertices[ends[i].first],
                           g.vertices[ends[i].second],
                           random_nonsingular(rng, g.rank, opt.entry_bound),
                           random_nonsingular(rng, g.rank, opt.entry_bound)});
  return g;
}

/// Random word with `length` letters over the vertex groups and stable
/// letters of the graph.
inline GroupWord random_word(std::mt19937_64& rng, const GraphLayout& layout, std::size_t length,
                             int entry_bound = 2) {
  std::uniform_int_distribution<int> entry(-entry_bound, entry_bound);
  const auto& stable = layout.non_tree_edges();
  GroupWord w;
  for (std::size_t i = 0; i < length; ++i) {
    bool use_stable = !stable.empty() && rng() % 3 == 0;
    if (use_stable) {
      const Edge& e = layout.edge_at(stable[rng() % stable.size()]);
      w *= GroupWord::stable(e.id, rng() % 2 ? 1 : -1);
    } else {
      IntVector x(layout.rank());
      for (auto& c : x) c = entry(rng);
      w *= GroupWord::vertex(layout.vertex_id(rng() % layout.vertex_count()), x);
    }
  }
  return w;
}

}  // namespace gbsn
