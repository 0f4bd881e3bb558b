#pragma once

#include "bvd/diagram.hpp"
#include "bvd/vershik.hpp"

namespace bvd::testing {

inline OrderedDiagram d1() { return OrderedDiagram::from_sources({{{0, 0}}}, RepeatSpec{1, 1}); }

// A:(A,B), B:(A) at every level from 2 on.
inline OrderedDiagram stationary_fibonacci() {
  return OrderedDiagram::from_sources({{{0}, {0}}, {{0, 1}, {0}}}, RepeatSpec{2, 1});
}

// Same incidence, with the order of A's in-edges alternating between levels.
inline OrderedDiagram alternating_fibonacci() {
  return OrderedDiagram::from_sources({{{0}, {0}}, {{0, 1}, {0}}, {{1, 0}, {0}}}, RepeatSpec{2, 2});
}

inline OrderedDiagram figure5() {
  return OrderedDiagram::from_sources({{{0}, {0}}, {{0, 1, 0, 1, 0, 1, 0, 1}, {0, 1}}, {{0, 0}, {0, 1}}});
}

// Level-1 a single vertex with edges a, b; level 2 K vertices with 2 c_v
// in-edges; then every vertex takes one edge from each level-2 vertex.
inline OrderedDiagram infection_example(const std::vector<std::size_t>& half_heights) {
  const std::size_t K = half_heights.size();
  std::vector<std::vector<VertexId>> level2(K);
  for (std::size_t v = 0; v < K; ++v) level2[v].assign(2 * half_heights[v], 0);
  std::vector<VertexId> all(K);
  for (std::size_t v = 0; v < K; ++v) all[v] = static_cast<VertexId>(v);
  std::vector<std::vector<VertexId>> level3(K, all);
  return OrderedDiagram::from_sources({{{0, 0}}, level2, level3}, RepeatSpec{3, 1});
}

inline PointApprox repeating(FinitePath base, std::vector<Edge> cycle, std::vector<Edge> lead = {}) {
  return PointApprox{std::move(base), Tail{Tail::Kind::Repeating, std::move(lead), std::move(cycle)}};
}

inline PointApprox finite_point(FinitePath base) { return PointApprox{std::move(base), Tail{}}; }

}  // namespace bvd::testing
