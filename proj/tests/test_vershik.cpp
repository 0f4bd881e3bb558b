#include <gtest/gtest.h>

#include <random>

#include "bvd/errors.hpp"
#include "fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace bvd {
namespace {

using testing::d1;
using testing::repeating;
using testing::sorted_tower;

TEST(Successor, WalksEachTowerInOrder) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testing::random_diagram(rng);
    for (std::size_t n = 1; n <= d.stored_depth(); ++n)
      for (VertexId v = 0; v < d.vertex_count(n); ++v) {
        const auto tower = sorted_tower(d, n, v);
        EXPECT_EQ(extreme_path(d, n, v, Extreme::Min), tower.front());
        EXPECT_EQ(extreme_path(d, n, v, Extreme::Max), tower.back());
        for (std::size_t r = 0; r + 1 < tower.size(); ++r) {
          EXPECT_EQ(successor_path(d, tower[r]), tower[r + 1]);
          EXPECT_EQ(predecessor_path(d, tower[r + 1]), tower[r]);
        }
        EXPECT_FALSE(successor_path(d, tower.back()).has_value());
        EXPECT_FALSE(predecessor_path(d, tower.front()).has_value());
      }
  }
}

TEST(Successor, AdvanceReportsIncrementedLevel) {
  const auto d = d1();
  std::vector<Edge> edges{{0, 2}, {0, 2}, {0, 1}};
  EXPECT_EQ(advance_edges(d, edges, Direction::Forward), 3u);
  EXPECT_EQ(edges, (std::vector<Edge>{{0, 1}, {0, 1}, {0, 2}}));
  EXPECT_EQ(advance_edges(d, edges, Direction::Backward), 3u);
  std::vector<Edge> top{{0, 2}, {0, 2}};
  EXPECT_EQ(advance_edges(d, top, Direction::Forward), 0u);
}

TEST(Points, CanonicalFoldsCycleCopies) {
  const Edge e{0, 1};
  PointApprox x = repeating(FinitePath{{{0, 2}}}, {e}, {e, e, {0, 2}, e, e});
  const PointApprox c = canonical(x);
  EXPECT_EQ(c.tail.lead, (std::vector<Edge>{e, e, {0, 2}}));
  EXPECT_EQ(c.prefix(9), x.prefix(9));
  EXPECT_TRUE(is_well_formed(d1(), c));
}

TEST(Points, WellFormedness) {
  const auto d = testing::alternating_fibonacci();
  EXPECT_TRUE(is_well_formed(d, repeating(FinitePath{{{0, 1}}}, {{0, 1}, {0, 2}})));
  EXPECT_FALSE(is_well_formed(d, repeating(FinitePath{{{0, 1}}}, {{0, 1}})));
  EXPECT_FALSE(is_well_formed(d, repeating(FinitePath{{{0, 1}}}, {{0, 1}, {0, 1}})));
  EXPECT_FALSE(is_well_formed(testing::figure5(), repeating(FinitePath{{{0, 1}}}, {{0, 1}})));
  EXPECT_THROW(check_point(d, PointApprox{FinitePath{{{0, 1}}}, Tail{Tail::Kind::None, {{0, 1}}, {}}}),
               ContractError);
  const PointApprox finite{FinitePath{{{0, 1}}}, Tail{Tail::Kind::Explicit, {{0, 1}}, {}}};
  EXPECT_THROW(finite.prefix(3), TailExhausted);
}

TEST(Points, StepOnDyadicCountsInBinary) {
  const auto d = d1();
  PointApprox x = repeating(FinitePath{}, {{0, 1}});
  for (Count m = 0; m < 64; ++m) {
    const FinitePath p = x.prefix(8);
    Count value = 0;
    for (std::size_t t = 0; t < 8; ++t) value |= Count{p.edges[t].ordinal - 1u} << t;
    EXPECT_EQ(value, m);
    x = step_point(d, x, Direction::Forward);
  }
}

TEST(Points, ExtremeAndExhaustedTails) {
  const auto d = d1();
  EXPECT_THROW(step_point(d, repeating(FinitePath{}, {{0, 2}}), Direction::Forward), ExtremePoint);
  EXPECT_THROW(step_point(d, repeating(FinitePath{}, {{0, 1}}), Direction::Backward), ExtremePoint);
  const PointApprox top{FinitePath{{{0, 2}, {0, 2}}}, Tail{Tail::Kind::Explicit, {}, {}}};
  EXPECT_THROW(step_point(d, top, Direction::Forward), TailExhausted);
  EXPECT_NO_THROW(step_point(d, top, Direction::Backward));
}

TEST(Points, StepsAreCofinalAndInvertible) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testing::random_diagram(rng);
    PointApprox x = testing::finite_point(testing::random_path(rng, d, d.stored_depth()));
    for (;;) {
      const auto next = successor_path(d, x.base);
      if (!next) {
        EXPECT_THROW(step_point(d, x, Direction::Forward), TailExhausted);
        break;
      }
      const PointApprox y = step_point(d, x, Direction::Forward);
      EXPECT_EQ(y.base, *next);
      std::size_t changed = 0;
      for (std::size_t t = 0; t < x.base.level(); ++t)
        if (x.base.edges[t] != y.base.edges[t]) changed = t + 1;
      ASSERT_GT(changed, 0u);
      for (std::size_t t = changed; t < x.base.level(); ++t) EXPECT_EQ(x.base.edges[t], y.base.edges[t]);
      EXPECT_EQ(step_point(d, y, Direction::Backward), x);
      x = y;
    }
  }
}

TEST(Points, MultiStepMatchesSingleSteps) {
  const auto d = testing::alternating_fibonacci();
  const PointApprox x = repeating(FinitePath{{{0, 1}}}, {{0, 1}, {0, 2}});
  PointApprox y = x;
  for (int m = 1; m <= 30; ++m) {
    y = step_point(d, y, Direction::Forward);
    EXPECT_EQ(step_point(d, x, std::int64_t{m}), y);
    EXPECT_EQ(step_point(d, y, std::int64_t{-m}), x);
  }
  const auto orbit = orbit_window(d, x, 4, -5, 5);
  ASSERT_EQ(orbit.size(), 11u);
  for (std::int64_t m = -5; m <= 5; ++m) EXPECT_EQ(orbit[static_cast<std::size_t>(m + 5)], step_point(d, x, m).prefix(4));
}

TEST(Points, OrbitNeedsSpecifiedLevels) {
  const auto d = testing::figure5();
  const PointApprox y{FinitePath{{{0, 1}, {0, 1}}}, Tail{Tail::Kind::Explicit, {{0, 1}}, {}}};
  EXPECT_THROW(orbit_window(d, y, 4, 0, 1), ContractError);
  EXPECT_THROW(orbit_window(d, y, 1, 0, 20), TailExhausted);
  EXPECT_EQ(orbit_window(d, y, 3, 0, 15).size(), 16u);
}

TEST(ProperOrder, Verdicts) {
  const auto dy = is_properly_ordered(d1());
  EXPECT_EQ(dy.status, ProperOrderVerdict::Status::Yes);
  const auto st = is_properly_ordered(testing::stationary_fibonacci());
  EXPECT_EQ(st.status, ProperOrderVerdict::Status::No);
  EXPECT_EQ(st.min_count, 1u);
  EXPECT_EQ(st.max_count, 2u);
  EXPECT_EQ(is_properly_ordered(testing::alternating_fibonacci()).status, ProperOrderVerdict::Status::Yes);
  EXPECT_EQ(is_properly_ordered(testing::figure5()).status, ProperOrderVerdict::Status::Unknown);
  EXPECT_STREQ(to_string(ProperOrderVerdict::Status::No), "no");
}

TEST(ProperOrder, ExtremeThreads) {
  const auto d = testing::alternating_fibonacci();
  for (std::size_t n = 1; n < 12; ++n) {
    EXPECT_EQ(extreme_thread_vertex(d, n, Extreme::Min), n % 2 == 0 ? 1u : 0u);
    for (Extreme which : {Extreme::Min, Extreme::Max}) {
      const auto& s = d.sources(n + 1, extreme_thread_vertex(d, n + 1, which));
      EXPECT_EQ(which == Extreme::Min ? s.front() : s.back(), extreme_thread_vertex(d, n, which));
    }
  }
  EXPECT_THROW(extreme_thread_vertex(testing::stationary_fibonacci(), 3, Extreme::Max), ContractError);
  EXPECT_FALSE(has_uniform_extreme_sources(d, 2));
  EXPECT_TRUE(has_uniform_extreme_sources(d1(), 5));
}

TEST(Distance, FirstDifferingLevel) {
  const FinitePath a{{{0, 1}, {0, 1}, {0, 2}}};
  const FinitePath b{{{0, 1}, {0, 2}, {0, 2}}};
  EXPECT_DOUBLE_EQ(path_distance(a, b), 0.5);
  EXPECT_DOUBLE_EQ(path_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(path_distance(a, truncate(a, 2)), 0.0);
}

}  // namespace
}  // namespace bvd
