#include <gtest/gtest.h>

#include <random>

#include "bvd/errors.hpp"
#include "bvd/surgery.hpp"
#include "fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace bvd {
namespace {

struct Planted {
  OrderedDiagram d;
  SurgeryPlan plan;
};

// Random diagram where two vertices of one level are forced into a merge or split pattern.
std::optional<Planted> plant(std::mt19937_64& rng, bool merge) {
  auto base = testing::random_diagram(rng);
  std::vector<Level> levels = base.stored_levels();
  std::vector<std::size_t> candidates;
  for (std::size_t n = 1; n < levels.size(); ++n)
    if (levels[n].vertex_count() >= 2) candidates.push_back(n);
  if (candidates.empty()) return std::nullopt;
  const std::size_t n = candidates[testing::uniform(rng, 0, candidates.size() - 1)];
  const auto v = static_cast<VertexId>(testing::uniform(rng, 0, levels[n].vertex_count() - 1));
  auto w = static_cast<VertexId>(testing::uniform(rng, 0, levels[n].vertex_count() - 2));
  if (w >= v) ++w;
  auto& sv = levels[n].sources[v];
  auto& sw = levels[n].sources[w];
  sw = sv;
  if (!merge)
    for (std::size_t e = testing::uniform(rng, 1, 3); e > 0; --e)
      sw.push_back(static_cast<VertexId>(testing::uniform(rng, 0, levels[n - 1].vertex_count() - 1)));
  OrderedDiagram d(std::move(levels));
  if (!validate_and_profile(d).ok) return std::nullopt;
  const auto plan = plan_for_vertices(d, n - 1, v, w);
  if (!plan) return std::nullopt;
  return Planted{d, *plan};
}

TEST(Plans, Classification) {
  const auto d = OrderedDiagram::from_sources({{{0, 0}}, {{0}, {0, 0}, {0}}});
  EXPECT_EQ(plan_for_vertices(d, 1, 0, 2), (SurgeryPlan{SurgeryPlan::Kind::Merge, 1, 0, 2}));
  EXPECT_EQ(plan_for_vertices(d, 1, 1, 0), (SurgeryPlan{SurgeryPlan::Kind::Split, 1, 0, 1}));
  EXPECT_THROW(plan_for_vertices(d, 1, 1, 1), ContractError);
  const auto e = OrderedDiagram::from_sources({{{0}, {0}}, {{0, 1}, {1, 0}}});
  EXPECT_FALSE(plan_for_vertices(e, 1, 0, 1).has_value());
  EXPECT_THROW(insert_merge_level(d, SurgeryPlan{SurgeryPlan::Kind::Merge, 1, 0, 1}), ContractError);
  EXPECT_THROW(insert_split_level(d, SurgeryPlan{SurgeryPlan::Kind::Merge, 1, 0, 2}), ContractError);
  EXPECT_STREQ(to_string(SurgeryPlan::Kind::Split), "split");
}

TEST(Insertion, RoundTripShapeAndEdgeCounts) {
  std::mt19937_64 rng(51);
  int merges = 0;
  int splits = 0;
  while (merges < 60 || splits < 60) {
    const bool merge = merges < 60 && (splits >= 60 || testing::uniform(rng, 0, 1));
    const auto p = plant(rng, merge);
    if (!p) continue;
    const auto& d = p->d;
    const auto& plan = p->plan;
    const std::size_t i = plan.level;
    const auto s = apply_plan(d, plan);
    ASSERT_TRUE(validate_and_profile(s).ok);
    EXPECT_EQ(telescope(s, skip_level_cuts(d.stored_depth() + 1, i + 1)), d);
    const std::size_t K = d.vertex_count(i + 1);
    if (plan.kind == SurgeryPlan::Kind::Merge) {
      EXPECT_EQ(s.vertex_count(i + 1), K - 1);
      ++merges;
    } else {
      EXPECT_EQ(s.vertex_count(i + 1), K);
      EXPECT_EQ(s.edge_count(i + 1), d.edge_count(i + 1) - d.in_degree(i + 1, plan.v));
      ++splits;
    }
  }
}

TEST(Insertion, VershikConjugacyOverTowerSweeps) {
  std::mt19937_64 rng(52);
  int checked = 0;
  while (checked < 40) {
    const auto p = plant(rng, testing::uniform(rng, 0, 1) == 1);
    if (!p) continue;
    const auto& d = p->d;
    const auto s = apply_plan(d, p->plan);
    const std::size_t inserted = p->plan.level + 1;
    const auto cuts = skip_level_cuts(s.stored_depth(), inserted);
    const std::size_t n = d.stored_depth();
    for (VertexId v = 0; v < d.vertex_count(n); ++v) {
      PointApprox x = testing::finite_point(extreme_path(d, n, v, Extreme::Min));
      for (;;) {
        const PointApprox lifted = lift_point(d, s, inserted, x);
        EXPECT_EQ(from_telescoped(s, cuts, x.base), lifted.base);
        EXPECT_EQ(to_telescoped(s, cuts, lifted.base), x.base);
        const auto next = successor_path(d, x.base);
        if (!next) {
          EXPECT_FALSE(successor_path(s, lifted.base).has_value());
          break;
        }
        EXPECT_EQ(successor_path(s, lifted.base), lift_point(d, s, inserted, testing::finite_point(*next)).base);
        x.base = *next;
      }
    }
    ++checked;
  }
}

TEST(Insertion, RepeatingDiagram) {
  const auto d = testing::alternating_fibonacci();
  const auto plan = plan_for_vertices(d, 1, 0, 1);
  ASSERT_TRUE(plan.has_value());
  EXPECT_EQ(plan->kind, SurgeryPlan::Kind::Split);
  EXPECT_EQ(plan->v, 1u);
  const auto s = apply_plan(d, *plan);
  ASSERT_TRUE(s.is_infinite());
  EXPECT_TRUE(validate_and_profile(s).ok);
  const std::size_t N = 9;
  EXPECT_EQ(telescope(s.truncated(N + 1), skip_level_cuts(N + 1, 2)), d.truncated(N));
  for (std::size_t n = 3; n < 20; ++n) EXPECT_EQ(s.level(n + 1), d.level(n)) << n;

  const PointApprox x = testing::repeating(FinitePath{{{0, 1}}}, {{0, 1}, {0, 2}});
  const PointApprox y = lift_point(d, s, 2, x);
  EXPECT_TRUE(is_well_formed(s, y));
  for (std::int64_t m = 0; m < 30; ++m) {
    const auto xm = step_point(d, x, m);
    const auto ym = step_point(s, y, m);
    EXPECT_EQ(to_telescoped(s, skip_level_cuts(12, 2), ym.prefix(12)), xm.prefix(11));
  }
}

TEST(Reduce, SplitThenMerge) {
  const auto d = OrderedDiagram::from_sources({{{0, 0}}, {{0}, {0, 0}}, {{0, 1}, {1, 0}}});
  const PointApprox x = testing::finite_point(FinitePath{{{0, 1}, {0, 1}, {0, 1}}});
  const PointApprox y = testing::finite_point(FinitePath{{{0, 1}, {1, 1}, {1, 1}}});
  const Window w = default_window(d, std::vector<PointApprox>{x, y});
  EXPECT_EQ(w, (Window{0, 5}));
  const auto first = find_surgery_plan(d, 1, x, y, w);
  ASSERT_TRUE(first.plan.has_value());
  EXPECT_EQ(first.plan->kind, SurgeryPlan::Kind::Split);
  EXPECT_EQ(first.witness.offset, 0);

  const auto r = reduce_rank_once(d, 1, x, y, w);
  ASSERT_EQ(r.status, ReduceResult::Status::Reduced) << r.reason;
  ASSERT_EQ(r.plans.size(), 2u);
  EXPECT_EQ(r.plans[0].kind, SurgeryPlan::Kind::Split);
  EXPECT_EQ(r.plans[1].kind, SurgeryPlan::Kind::Merge);
  EXPECT_EQ(r.edge_counts, (std::vector<std::size_t>{3, 2, 1}));
  EXPECT_EQ(r.reduced_level, 2u);
  EXPECT_EQ(r.diagram.vertex_count(2), d.vertex_count(2) - 1);
  EXPECT_EQ(telescope(r.diagram, r.original_cuts), d);
  EXPECT_EQ(to_telescoped(r.diagram, r.original_cuts, r.x.base), x.base);
  EXPECT_EQ(to_telescoped(r.diagram, r.original_cuts, r.y.base), y.base);
}

TEST(Reduce, StallsWithDiagnostics) {
  const auto d = testing::d1();
  const PointApprox x = testing::repeating(FinitePath{{{0, 1}, {0, 1}, {0, 1}}}, {{0, 1}});
  const PointApprox y = testing::repeating(FinitePath{{{0, 1}, {0, 1}, {0, 2}}}, {{0, 1}});
  const auto r = reduce_rank_once(d, 1, x, y, Window{0, 7});
  EXPECT_EQ(r.status, ReduceResult::Status::Stalled);
  EXPECT_NE(r.reason.find("not of depth 1"), std::string::npos);
  const auto at_two = find_surgery_plan(d, 2, x, y, Window{0, 7});
  EXPECT_FALSE(at_two.plan.has_value());
  EXPECT_NE(at_two.diagnostic.find("no-common-cut"), std::string::npos);

  const auto e = OrderedDiagram::from_sources({{{0}, {0}}, {{0, 1}, {1, 0}}, {{0, 1}}});
  const PointApprox a = testing::finite_point(FinitePath{{{0, 1}, {0, 1}, {0, 1}}});
  const PointApprox b = testing::finite_point(FinitePath{{{1, 1}, {1, 1}, {0, 2}}});
  const auto no_prefix = find_surgery_plan(e, 1, a, b, Window{0, 1});
  EXPECT_FALSE(no_prefix.plan.has_value());
}

}  // namespace
}  // namespace bvd
