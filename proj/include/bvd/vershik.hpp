#pragma once

// The Vershik (lexicographic successor) map on finite paths and on finite
// approximations of infinite paths, extreme paths, proper ordering, and
// windowed orbits.

#include <cstdint>
#include <optional>
#include <vector>

#include "bvd/diagram.hpp"

namespace bvd {

enum class Extreme { Min, Max };
enum class Direction { Forward, Backward };

FinitePath extreme_path(const OrderedDiagram& diagram, std::size_t n, VertexId v, Extreme which);

// nullopt means the step rolled over: every edge of the path was maximal
// (successor) or minimal (predecessor).
using StepOutcome = std::optional<FinitePath>;

StepOutcome successor_path(const OrderedDiagram& diagram, const FinitePath& path);
StepOutcome predecessor_path(const OrderedDiagram& diagram, const FinitePath& path);

// In-place Vershik step over a run of consecutive edges starting at level 1.
// Returns the level that was incremented (decremented), or 0 if every edge was extreme.
std::size_t advance_edges(const OrderedDiagram& diagram, std::vector<Edge>& edges, Direction direction);

// How a point continues below its base path.
struct Tail {
  enum class Kind { None, Explicit, Repeating };
  Kind kind = Kind::None;
  // Explicit: all tail edges. Repeating: edges before the cycle starts.
  std::vector<Edge> lead;
  // Repeating only: repeated forever after `lead`, in step with the diagram's repeat.
  std::vector<Edge> cycle;

  bool operator==(const Tail&) const = default;
};

struct PointApprox {
  FinitePath base;
  Tail tail;

  // Number of explicitly stored edges (base plus lead).
  std::size_t specified_depth() const noexcept { return base.level() + tail.lead.size(); }
  bool is_infinite() const noexcept { return tail.kind == Tail::Kind::Repeating; }
  // Levels 1..n of the point; n may exceed specified_depth() for repeating tails.
  FinitePath prefix(std::size_t n) const;

  bool operator==(const PointApprox&) const = default;
};

PointApprox make_point(FinitePath base, Tail tail = {});
bool is_well_formed(const OrderedDiagram& diagram, const PointApprox& point);
void check_point(const OrderedDiagram& diagram, const PointApprox& point);
// Folds copies of the cycle out of the end of the lead.
PointApprox canonical(PointApprox point);

// Throws TailExhausted when every specified edge is extreme, and ExtremePoint
// when a repeating tail makes the point an infinite extreme path.
PointApprox step_point(const OrderedDiagram& diagram, const PointApprox& point, Direction direction);
PointApprox step_point(const OrderedDiagram& diagram, const PointApprox& point, std::int64_t steps);

// Level-k truncations of T^m x for m = lo..hi (index 0 holds m = lo).
std::vector<FinitePath> orbit_window(const OrderedDiagram& diagram, const PointApprox& point, std::size_t k,
                                     std::int64_t lo, std::int64_t hi);

struct ProperOrderVerdict {
  enum class Status { Yes, No, Unknown };
  Status status = Status::Unknown;
  // Number of infinite min (max) paths. For finite diagrams an upper bound read off the last level.
  std::size_t min_count = 0;
  std::size_t max_count = 0;
  std::size_t checked_level = 0;
};

const char* to_string(ProperOrderVerdict::Status status);

ProperOrderVerdict is_properly_ordered(const OrderedDiagram& diagram);

// Vertex at level n of the unique infinite min (max) path of a properly ordered repeating diagram.
VertexId extreme_thread_vertex(const OrderedDiagram& diagram, std::size_t n, Extreme which);

// True when all minimal edges at level n share a source, and likewise all maximal edges.
bool has_uniform_extreme_sources(const OrderedDiagram& diagram, std::size_t n);

// d(x, x') = 1/n where n is the first level with differing edges; 0 when the
// specified prefixes agree on their common depth.
double path_distance(const FinitePath& x, const FinitePath& y);

}  // namespace bvd
