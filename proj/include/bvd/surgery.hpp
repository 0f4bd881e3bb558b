#pragma once

// Level insertion between levels i and i + 1 that leaves the Vershik map
// unchanged: a merge level identifies two vertices with identical ordered
// source lists, a split level peels the common prefix off a longer list.
// Repeating the split strictly lowers the edge count between i and the new
// level until a merge applies, which produces a level with one vertex fewer.

#include <optional>
#include <string>
#include <vector>

#include "bvd/compatibility.hpp"
#include "bvd/diagram.hpp"
#include "bvd/vershik.hpp"

namespace bvd {

struct SurgeryPlan {
  enum class Kind { Merge, Split };
  Kind kind = Kind::Merge;
  // Insertion happens between `level` and `level + 1`; v and w live at level + 1.
  std::size_t level = 0;
  // in_degree(v) <= in_degree(w).
  VertexId v = 0;
  VertexId w = 0;

  bool operator==(const SurgeryPlan&) const = default;
};

const char* to_string(SurgeryPlan::Kind kind);

// Edge-level classification of two distinct vertices at level i + 1.
std::optional<SurgeryPlan> plan_for_vertices(const OrderedDiagram& diagram, std::size_t i, VertexId a, VertexId b);

struct PlanSearch {
  std::optional<SurgeryPlan> plan;
  WitnessResult witness;
  DepthReport depth;
  // Set when no plan is returned.
  std::string diagnostic;
};

// Derives v != w from a minimal-cut witness of a depth-i pair and classifies them.
PlanSearch find_surgery_plan(const OrderedDiagram& diagram, std::size_t i, const PointApprox& x, const PointApprox& y,
                             Window window);

void check_plan(const OrderedDiagram& diagram, const SurgeryPlan& plan);

// The inserted level is plan.level + 1; later levels shift down by one.
OrderedDiagram insert_merge_level(const OrderedDiagram& diagram, const SurgeryPlan& plan);
OrderedDiagram insert_split_level(const OrderedDiagram& diagram, const SurgeryPlan& plan);
OrderedDiagram apply_plan(const OrderedDiagram& diagram, const SurgeryPlan& plan);

// Cut levels that telescope `surgered` back onto the diagram before insertion
// of a level at `inserted_level`, covering levels 0..depth of the result.
std::vector<std::size_t> skip_level_cuts(std::size_t depth, std::size_t inserted_level);

// Recodes a point of the diagram before insertion into `surgered`, where a
// level was inserted at `inserted_level`.
PointApprox lift_point(const OrderedDiagram& original, const OrderedDiagram& surgered, std::size_t inserted_level,
                       const PointApprox& x);

struct ReduceResult {
  enum class Status { Reduced, Stalled };
  Status status = Status::Stalled;
  OrderedDiagram diagram;
  std::vector<SurgeryPlan> plans;
  // Edges between level i and the level right below it, before and after each stage.
  std::vector<std::size_t> edge_counts;
  // Level of the final diagram holding one vertex fewer (Reduced only).
  std::size_t reduced_level = 0;
  // Telescoping the result to these levels gives back the input.
  std::vector<std::size_t> original_cuts;
  PointApprox x;
  PointApprox y;
  std::string reason;
};

const char* to_string(ReduceResult::Status status);

ReduceResult reduce_rank_once(const OrderedDiagram& diagram, std::size_t i, const PointApprox& x, const PointApprox& y,
                              Window window, std::size_t budget = 64);

}  // namespace bvd
