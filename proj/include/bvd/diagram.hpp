#pragma once

// Ordered Bratteli diagrams: the graded data model, validation and profiling,
// telescoping, and counting/ranking of finite paths inside vertex towers.
//
// A level stores, for every vertex, the ordered list of sources of its
// in-edges; the 1-based position of an entry is the ordinal of that edge.
// Parallel edges are repeated entries. Vertex and level indices are 0-based.
//
// All path orders in this library compare from the deepest edge upward: the
// first level (counting from the bottom) where two paths differ decides.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bvd {

using VertexId = std::uint32_t;
using Ordinal = std::uint32_t;
using Count = std::uint64_t;

struct Level {
  // sources[v][o - 1] is the source (at the previous level) of the in-edge of v with ordinal o.
  std::vector<std::vector<VertexId>> sources;

  std::size_t vertex_count() const noexcept { return sources.size(); }
  std::size_t edge_count() const noexcept;

  bool operator==(const Level&) const = default;
};

// Levels from_level + t and from_level + t + period coincide for every t >= 0.
struct RepeatSpec {
  std::size_t from_level = 1;
  std::size_t period = 1;

  bool operator==(const RepeatSpec&) const = default;
};

class OrderedDiagram {
 public:
  // The trivial diagram consisting of the root only.
  OrderedDiagram();
  // levels[0] is the root level; it must hold one vertex with no in-edges.
  explicit OrderedDiagram(std::vector<Level> levels, std::optional<RepeatSpec> repeat = std::nullopt);

  // Convenience: per_level[n - 1] is level n's source lists, the root level is implied.
  static OrderedDiagram from_sources(std::vector<std::vector<std::vector<VertexId>>> per_level,
                                     std::optional<RepeatSpec> repeat = std::nullopt);

  std::size_t stored_depth() const noexcept { return levels_.size() - 1; }
  bool is_infinite() const noexcept { return repeat_.has_value(); }
  const std::optional<RepeatSpec>& repeat() const noexcept { return repeat_; }
  const std::vector<Level>& stored_levels() const noexcept { return levels_; }

  bool has_level(std::size_t n) const noexcept;
  // Resolves levels past the stored prefix through the repeat spec.
  const Level& level(std::size_t n) const;
  std::size_t vertex_count(std::size_t n) const { return level(n).vertex_count(); }
  const std::vector<VertexId>& sources(std::size_t n, VertexId v) const;
  std::size_t in_degree(std::size_t n, VertexId v) const { return sources(n, v).size(); }
  VertexId source(std::size_t n, VertexId v, Ordinal ordinal) const;
  std::size_t edge_count(std::size_t n) const { return level(n).edge_count(); }

  // Incidence matrix M_n: rows are level-n vertices, columns level-(n-1) vertices.
  std::vector<std::vector<Count>> incidence(std::size_t n) const;

  // The finite diagram made of levels 0..n (unrolling the repeat if needed).
  OrderedDiagram truncated(std::size_t n) const;
  // Same infinite diagram, with the stored prefix unrolled so the repeat starts after `level`.
  OrderedDiagram with_repeat_start_after(std::size_t level) const;

  bool operator==(const OrderedDiagram&) const = default;

 private:
  std::vector<Level> levels_;
  std::optional<RepeatSpec> repeat_;
};

struct Issue {
  enum class Kind {
    RootLevel,
    NoInEdges,
    SourceOutOfRange,
    NoOutEdges,
    RepeatIncomplete,
    RepeatMismatch,
  };
  Kind kind;
  std::size_t level = 0;
  std::size_t vertex = 0;
  std::string message;
};

const char* to_string(Issue::Kind kind);

struct ValidationReport {
  bool ok = true;
  std::size_t rank = 0;
  bool has_ers = true;
  // Largest level n <= checked_up_to reachable by a telescoping whose segments are fully connected.
  std::size_t simple_up_to = 0;
  std::size_t checked_up_to = 0;
  // Only decided for repeating diagrams: the period block is primitive.
  std::optional<bool> simple;
  std::vector<Issue> issues;
};

// Never throws on a malformed diagram; violations are collected in `issues`.
// `horizon` bounds the simplicity scan for repeating diagrams (0 picks a default).
ValidationReport validate_and_profile(const OrderedDiagram& diagram, std::size_t horizon = 0);

// Throws ContractError quoting the first issue when validation fails.
void require_valid(const OrderedDiagram& diagram);

// `cuts` must start at 0 and strictly increase. The result is finite.
OrderedDiagram telescope(const OrderedDiagram& diagram, std::span<const std::size_t> cuts);

// One edge of a path, identified by its range vertex and its ordinal among the in-edges there.
struct Edge {
  VertexId range = 0;
  Ordinal ordinal = 1;

  auto operator<=>(const Edge&) const = default;
};

// A path from the root; edges[t - 1] is the edge between levels t - 1 and t.
struct FinitePath {
  std::vector<Edge> edges;

  std::size_t level() const noexcept { return edges.size(); }
  VertexId terminal() const noexcept { return edges.empty() ? 0 : edges.back().range; }
  std::vector<Ordinal> ordinals() const;

  auto operator<=>(const FinitePath&) const = default;
};

bool is_well_formed(const OrderedDiagram& diagram, const FinitePath& path);
void check_path(const OrderedDiagram& diagram, const FinitePath& path);
FinitePath truncate(const FinitePath& path, std::size_t level);

// Builds the path into `terminal` at level ordinals.size() with the given ordinals.
FinitePath path_from_ordinals(const OrderedDiagram& diagram, VertexId terminal,
                              std::span<const Ordinal> ordinals);

// Tower heights for paths starting at any vertex of `base_level` (the root when 0)
// and ending at levels base_level..top_level. Prefix sums over ordinals are kept
// so ranks and unranks are a walk over the levels.
class TowerHeights {
 public:
  TowerHeights(const OrderedDiagram& diagram, std::size_t top_level, std::size_t base_level = 0);

  std::size_t base_level() const noexcept { return base_; }
  std::size_t top_level() const noexcept { return base_ + heights_.size() - 1; }
  Count height(std::size_t n, VertexId v) const;
  // Number of paths into v whose edge at level n has ordinal < `ordinal`.
  Count before(std::size_t n, VertexId v, Ordinal ordinal) const;
  Count min_height(std::size_t n) const;
  Count max_height(std::size_t n) const;

  // `edges` covers levels base_level+1..base_level+edges.size().
  Count rank(std::span<const Edge> edges) const;
  std::vector<Edge> unrank(std::size_t n, VertexId v, Count position) const;

 private:
  const OrderedDiagram* diagram_;
  std::size_t base_;
  std::vector<std::vector<Count>> heights_;
  std::vector<std::vector<std::vector<Count>>> prefix_;
};

Count count_paths(const OrderedDiagram& diagram, std::size_t n, VertexId v);

// 1-based position of the path inside the tower of its terminal vertex.
Count path_rank(const OrderedDiagram& diagram, const FinitePath& path);
FinitePath path_unrank(const OrderedDiagram& diagram, std::size_t n, VertexId v, Count position);

// Bijection between paths to level cuts[t] of `diagram` and paths to level t of
// telescope(diagram, cuts).
FinitePath to_telescoped(const OrderedDiagram& diagram, std::span<const std::size_t> cuts,
                         const FinitePath& path);
FinitePath from_telescoped(const OrderedDiagram& diagram, std::span<const std::size_t> cuts,
                           const FinitePath& path);

}  // namespace bvd
