#include "bvd/surgery.hpp"

#include <algorithm>

#include "bvd/errors.hpp"

namespace bvd {

namespace {

// Inserts `inserted` as level i + 1 and replaces the old level i + 1 (now i + 2) by `below`.
OrderedDiagram insert_level(const OrderedDiagram& d, std::size_t i, Level inserted, Level below) {
  const OrderedDiagram base = d.with_repeat_start_after(i + 1);
  const auto& old = base.stored_levels();
  std::vector<Level> levels;
  levels.reserve(old.size() + 1);
  for (std::size_t t = 0; t <= i; ++t) levels.push_back(old[t]);
  levels.push_back(std::move(inserted));
  levels.push_back(std::move(below));
  for (std::size_t t = i + 2; t < old.size(); ++t) levels.push_back(old[t]);
  std::optional<RepeatSpec> repeat = base.repeat();
  if (repeat) ++repeat->from_level;
  return OrderedDiagram(std::move(levels), repeat);
}

}  // namespace

const char* to_string(SurgeryPlan::Kind kind) { return kind == SurgeryPlan::Kind::Merge ? "merge" : "split"; }

const char* to_string(ReduceResult::Status status) {
  return status == ReduceResult::Status::Reduced ? "reduced" : "stalled";
}

std::optional<SurgeryPlan> plan_for_vertices(const OrderedDiagram& d, std::size_t i, VertexId a, VertexId b) {
  if (a == b) throw ContractError("surgery needs two distinct vertices");
  if (d.in_degree(i + 1, a) > d.in_degree(i + 1, b)) std::swap(a, b);
  const auto& sa = d.sources(i + 1, a);
  const auto& sb = d.sources(i + 1, b);
  if (!std::equal(sa.begin(), sa.end(), sb.begin())) return std::nullopt;
  return SurgeryPlan{sa.size() == sb.size() ? SurgeryPlan::Kind::Merge : SurgeryPlan::Kind::Split, i, a, b};
}

void check_plan(const OrderedDiagram& d, const SurgeryPlan& plan) {
  if (!d.has_level(plan.level + 1)) throw ContractError("surgery level beyond the diagram");
  const std::size_t n = d.vertex_count(plan.level + 1);
  if (plan.v >= n || plan.w >= n || plan.v == plan.w) throw ContractError("surgery plan names invalid vertices");
  const auto& sv = d.sources(plan.level + 1, plan.v);
  const auto& sw = d.sources(plan.level + 1, plan.w);
  const bool prefix = sv.size() <= sw.size() && std::equal(sv.begin(), sv.end(), sw.begin());
  const bool ok = plan.kind == SurgeryPlan::Kind::Merge ? prefix && sv.size() == sw.size()
                                                        : prefix && sv.size() < sw.size();
  if (!ok) throw ContractError(std::string("vertices do not satisfy the ") + to_string(plan.kind) + " condition");
}

OrderedDiagram insert_merge_level(const OrderedDiagram& d, const SurgeryPlan& plan) {
  if (plan.kind != SurgeryPlan::Kind::Merge) throw ContractError("plan is not a merge");
  check_plan(d, plan);
  const Level& old = d.level(plan.level + 1);
  Level inserted;
  Level below;
  below.sources.resize(old.vertex_count());
  std::optional<VertexId> merged;
  for (VertexId u = 0; u < old.vertex_count(); ++u) {
    if (u == plan.v || u == plan.w) {
      if (!merged) {
        merged = static_cast<VertexId>(inserted.vertex_count());
        inserted.sources.push_back(old.sources[u]);
      }
      below.sources[u] = {*merged};
    } else {
      below.sources[u] = {static_cast<VertexId>(inserted.vertex_count())};
      inserted.sources.push_back(old.sources[u]);
    }
  }
  return insert_level(d, plan.level, std::move(inserted), std::move(below));
}

OrderedDiagram insert_split_level(const OrderedDiagram& d, const SurgeryPlan& plan) {
  if (plan.kind != SurgeryPlan::Kind::Split) throw ContractError("plan is not a split");
  check_plan(d, plan);
  const Level& old = d.level(plan.level + 1);
  const std::size_t m = old.sources[plan.v].size();
  Level inserted = old;
  const auto& sw = old.sources[plan.w];
  inserted.sources[plan.w].assign(sw.begin() + static_cast<std::ptrdiff_t>(m), sw.end());
  Level below;
  below.sources.resize(old.vertex_count());
  for (VertexId u = 0; u < old.vertex_count(); ++u) below.sources[u] = {u};
  below.sources[plan.w] = {plan.v, plan.w};
  return insert_level(d, plan.level, std::move(inserted), std::move(below));
}

OrderedDiagram apply_plan(const OrderedDiagram& d, const SurgeryPlan& plan) {
  return plan.kind == SurgeryPlan::Kind::Merge ? insert_merge_level(d, plan) : insert_split_level(d, plan);
}

std::vector<std::size_t> skip_level_cuts(std::size_t depth, std::size_t inserted_level) {
  std::vector<std::size_t> cuts;
  for (std::size_t t = 0; t <= depth; ++t)
    if (t != inserted_level) cuts.push_back(t);
  return cuts;
}

PlanSearch find_surgery_plan(const OrderedDiagram& d, std::size_t i, const PointApprox& x, const PointApprox& y,
                             Window window) {
  PlanSearch search;
  search.depth = depth_report(d, x, y, i + 1, window);
  if (search.depth.compatible_through != i) {
    search.diagnostic = "pair is not of depth " + std::to_string(i) + " on the window (compatible through " +
                        std::to_string(search.depth.compatible_through) + ")";
    return search;
  }
  search.witness = find_minimal_cut_witness(d, x, y, i, window);
  if (search.witness.status != WitnessResult::Status::Found) {
    search.diagnostic = std::string("no minimal-cut witness with distinct ranges: ") + to_string(search.witness.status);
    return search;
  }
  search.plan = plan_for_vertices(d, i, search.witness.range_x, search.witness.range_y);
  if (!search.plan)
    search.diagnostic = "depth witness exists but the ordered source lists of vertices " +
                        std::to_string(search.witness.range_x) + " and " + std::to_string(search.witness.range_y) +
                        " fail the prefix condition";
  return search;
}

PointApprox lift_point(const OrderedDiagram& original, const OrderedDiagram& surgered, std::size_t inserted_level,
                       const PointApprox& x) {
  check_point(original, x);
  if (inserted_level == 0) throw ContractError("cannot insert above the root");
  PointApprox src = x;
  // The cycle must start at or below the (shifted) repeat start of the result.
  const std::size_t cycle_floor = surgered.repeat() ? surgered.repeat()->from_level - 1 : 0;
  while (src.specified_depth() < inserted_level || (src.is_infinite() && src.specified_depth() + 1 < cycle_floor)) {
    if (!src.is_infinite()) throw ContractError("point is not specified down to the surgery level");
    src.tail.lead.insert(src.tail.lead.end(), src.tail.cycle.begin(), src.tail.cycle.end());
  }
  std::vector<Edge> edges = src.prefix(src.specified_depth()).edges;
  const Edge old = edges[inserted_level - 1];
  const TowerHeights segment(surgered, inserted_level + 1, inserted_level - 1);
  const auto pair = segment.unrank(inserted_level + 1, old.range, old.ordinal);
  edges[inserted_level - 1] = pair[0];
  edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(inserted_level), pair[1]);

  PointApprox out;
  const std::size_t base_len = src.base.level() >= inserted_level ? src.base.level() + 1 : src.base.level();
  out.base.edges.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(base_len));
  out.tail.kind = src.tail.kind;
  out.tail.lead.assign(edges.begin() + static_cast<std::ptrdiff_t>(base_len), edges.end());
  out.tail.cycle = src.tail.cycle;
  check_point(surgered, out);
  return out;
}

ReduceResult reduce_rank_once(const OrderedDiagram& d, std::size_t i, const PointApprox& x, const PointApprox& y,
                              Window window, std::size_t budget) {
  ReduceResult result;
  result.diagram = d;
  result.x = x;
  result.y = y;
  result.edge_counts.push_back(d.edge_count(i + 1));
  const std::size_t original_depth = d.stored_depth();
  auto finish_cuts = [&](std::size_t inserted) {
    // Inserted levels sit at i + 1 .. i + inserted; the original level n > i is now n + inserted.
    for (std::size_t t = 0; t <= i; ++t) result.original_cuts.push_back(t);
    for (std::size_t n = i + 1; n <= original_depth; ++n) result.original_cuts.push_back(n + inserted);
  };

  for (std::size_t stage = 0; stage <= budget; ++stage) {
    const PlanSearch search = find_surgery_plan(result.diagram, i, result.x, result.y, window);
    if (!search.plan) {
      result.reason = search.diagnostic;
      finish_cuts(stage);
      return result;
    }
    if (search.plan->kind == SurgeryPlan::Kind::Split && stage == budget) break;
    OrderedDiagram next = apply_plan(result.diagram, *search.plan);
    result.x = lift_point(result.diagram, next, i + 1, result.x);
    result.y = lift_point(result.diagram, next, i + 1, result.y);
    result.diagram = std::move(next);
    result.plans.push_back(*search.plan);
    result.edge_counts.push_back(result.diagram.edge_count(i + 1));
    if (search.plan->kind == SurgeryPlan::Kind::Merge) {
      result.status = ReduceResult::Status::Reduced;
      result.reduced_level = i + 1;
      finish_cuts(stage + 1);
      return result;
    }
  }
  result.reason = "stage budget exhausted";
  finish_cuts(result.plans.size());
  return result;
}

}  // namespace bvd
