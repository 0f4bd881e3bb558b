#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bvd/diagram.hpp"
#include "bvd/vershik.hpp"

namespace bvd::testing {

struct DiagramShape {
  std::size_t max_levels = 4;
  std::size_t max_vertices = 4;
  std::size_t max_in_degree = 4;
  std::size_t max_parallel = 4;
};

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Valid finite diagram: every vertex below the root has an in-edge and every
// vertex above the last level has an out-edge.
inline OrderedDiagram random_diagram(std::mt19937_64& rng, const DiagramShape& shape = {}) {
  const std::size_t depth = uniform(rng, 1, shape.max_levels);
  std::vector<std::vector<std::vector<VertexId>>> per_level;
  std::size_t prev = 1;
  for (std::size_t n = 1; n <= depth; ++n) {
    const std::size_t count = uniform(rng, 1, shape.max_vertices);
    std::vector<std::vector<VertexId>> level(count);
    std::vector<std::vector<std::size_t>> mult(count, std::vector<std::size_t>(prev, 0));
    auto add = [&](std::size_t v, VertexId s) {
      auto& list = level[v];
      list.insert(list.begin() + static_cast<std::ptrdiff_t>(uniform(rng, 0, list.size())), s);
      ++mult[v][s];
    };
    for (std::size_t v = 0; v < count; ++v) {
      const std::size_t deg = uniform(rng, 1, shape.max_in_degree);
      for (std::size_t e = 0; e < deg; ++e) {
        const auto s = static_cast<VertexId>(uniform(rng, 0, prev - 1));
        if (mult[v][s] < shape.max_parallel) add(v, s);
      }
      if (level[v].empty()) add(v, static_cast<VertexId>(uniform(rng, 0, prev - 1)));
    }
    for (std::size_t s = 0; s < prev; ++s) {
      bool used = false;
      for (std::size_t v = 0; v < count; ++v) used |= mult[v][s] > 0;
      if (!used) add(uniform(rng, 0, count - 1), static_cast<VertexId>(s));
    }
    per_level.push_back(std::move(level));
    prev = count;
  }
  return OrderedDiagram::from_sources(std::move(per_level));
}

// Repeating diagram with a random prefix and a random period block.
inline OrderedDiagram random_repeating(std::mt19937_64& rng, const DiagramShape& shape = {}) {
  for (;;) {
    OrderedDiagram d = random_diagram(rng, shape);
    const std::size_t depth = d.stored_depth();
    for (std::size_t from = 2; from <= depth; ++from)
      for (std::size_t to = depth; to >= from; --to)
        if (d.vertex_count(from - 1) == d.vertex_count(to))
          return OrderedDiagram(d.truncated(to).stored_levels(), RepeatSpec{from, to - from + 1});
    if (d.vertex_count(depth) == 1) return OrderedDiagram(d.stored_levels(), RepeatSpec{1, depth});
  }
}

inline FinitePath random_path(std::mt19937_64& rng, const OrderedDiagram& d, std::size_t n) {
  const auto v = static_cast<VertexId>(uniform(rng, 0, d.vertex_count(n) - 1));
  const Count h = count_paths(d, n, v);
  return path_unrank(d, n, v, std::uniform_int_distribution<Count>(1, h)(rng));
}

// Strictly increasing cut levels from 0 ending at `depth`.
inline std::vector<std::size_t> random_cuts(std::mt19937_64& rng, std::size_t depth) {
  std::vector<std::size_t> cuts{0};
  for (std::size_t n = 1; n < depth; ++n)
    if (uniform(rng, 0, 1)) cuts.push_back(n);
  cuts.push_back(depth);
  return cuts;
}

}  // namespace bvd::testing
