#include <gtest/gtest.h>

#include <stdexcept>

#include "bvd/dichotomy.hpp"
#include "bvd/errors.hpp"
#include "fixtures.hpp"
#include "support/oracles.hpp"

namespace bvd {
namespace {

using testing::repeating;

Count pow_checked(Count b, std::size_t e) {
  Count r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

TEST(Bounds, SmallValues) {
  EXPECT_EQ(infection_bound(1), 2u);
  EXPECT_EQ(infection_bound(2), 6u);
  EXPECT_EQ(dm_bound(1), 2u);
  EXPECT_EQ(dm_bound(2), 9u);
  for (std::size_t K = 1; K <= 16; ++K) EXPECT_EQ(infection_bound(K), (K - 1) * (Count{1} << K) + 2) << K;
  for (std::size_t K = 2; K <= 8; ++K) {
    EXPECT_EQ(dm_bound(K), pow_checked(K, K + 1) + 1);
    EXPECT_LT(infection_bound(K), dm_bound(K)) << K;
  }
  EXPECT_THROW(infection_bound(0), ContractError);
  EXPECT_THROW(infection_bound(64), std::overflow_error);
  EXPECT_THROW(dm_bound(40), std::overflow_error);
}

TEST(Bounds, CapsFollowDoublingRecurrence) {
  for (std::size_t K = 1; K <= 12; ++K) {
    const auto caps = infection_caps(K);
    ASSERT_EQ(caps.size(), K);
    EXPECT_EQ(caps[0], K);
    for (std::size_t l = 1; l < K; ++l) EXPECT_EQ(caps[l], 2 * caps[l - 1] - 1);
    Count total = 0;
    for (const Count c : caps) total += c;
    EXPECT_EQ(total + 1, infection_bound(K)) << K;
  }
  EXPECT_THROW(infection_cap(3, 0), ContractError);
  EXPECT_THROW(infection_cap(3, 4), ContractError);
}

TEST(Classify, OdometerPeriodsDouble) {
  const auto v = classify(testing::d1(), 5);
  EXPECT_EQ(v.kind, ClassificationVerdict::Kind::Odometer);
  ASSERT_EQ(v.levels.size(), 5u);
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_EQ(v.levels[k - 1].k, k);
    ASSERT_TRUE(v.levels[k - 1].verdict.periodic);
    EXPECT_EQ(v.levels[k - 1].verdict.period, Count{1} << k);
  }
  EXPECT_STREQ(to_string(v.kind), "Odometer");
}

TEST(Classify, SturmianIsExpansive) {
  const auto v = classify(testing::alternating_fibonacci(), 2, 21);
  EXPECT_EQ(v.kind, ClassificationVerdict::Kind::ExpansiveLikely);
  ASSERT_TRUE(v.first_aperiodic_level.has_value());
  EXPECT_EQ(*v.first_aperiodic_level, 1u);
  ASSERT_GE(v.complexity.size(), 10u);
  for (std::size_t l = 1; l <= v.complexity.size(); ++l) EXPECT_EQ(v.complexity[l - 1], l + 1);
}

TEST(Classify, RejectsUnsupportedInput) {
  EXPECT_THROW(classify(testing::stationary_fibonacci(), 2), ContractError);
  EXPECT_THROW(classify(testing::figure5(), 2), ContractError);
  EXPECT_THROW(classify(testing::d1(), 0), ContractError);
}

std::vector<PointApprox> odd_rank_family(const OrderedDiagram& d, std::size_t count) {
  std::vector<PointApprox> pts;
  for (Count r = 0; r < count; ++r) pts.push_back(repeating(path_unrank(d, 3, 0, 2 * r + 1), {{0, 1}}));
  return pts;
}

void expect_consistent_family(const InfectionReport& r, std::size_t K) {
  EXPECT_EQ(r.i0, 1u);
  EXPECT_EQ(r.j, 2u);
  EXPECT_EQ(r.K, K);
  EXPECT_EQ(r.required, infection_bound(K));
  EXPECT_TRUE(r.sufficient_witnesses);
  EXPECT_TRUE(r.distinct);
  EXPECT_TRUE(r.pairwise_compatible);
  EXPECT_TRUE(r.pairwise_separated);
  EXPECT_TRUE(r.no_common_cuts);
  EXPECT_TRUE(r.valid_family);
  EXPECT_EQ(r.caps, infection_caps(K));
  ASSERT_TRUE(r.first_exceedance.has_value());
  EXPECT_GT(r.first_exceedance->occupancy, r.first_exceedance->cap);
  EXPECT_EQ(r.first_exceedance->cap, r.caps[r.first_exceedance->order - 1]);
  EXPECT_TRUE(r.image_periodic);
  EXPECT_EQ(r.image_period, std::optional<std::size_t>{2});
  EXPECT_TRUE(r.conclusion_consistent);
  for (std::size_t l = 1; l < r.sorted_gaps.size(); ++l) {
    const auto& a = r.sorted_gaps[l - 1].gap;
    const auto& b = r.sorted_gaps[l].gap;
    EXPECT_TRUE(!b || (a && *a <= *b));
  }
}

TEST(Infection, TwoVertexFamily) {
  const auto d = testing::infection_example({6, 7});
  const auto r = verify_infection_argument(d, 1, odd_rank_family(d, 6), Window{0, 60});
  expect_consistent_family(r, 2);
  EXPECT_EQ(r.points_checked, 6u);
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      if (a == b) continue;
      EXPECT_EQ(r.depth[a][b], 1u);
      EXPECT_FALSE(r.common_cut[a][b]);
    }
}

TEST(Infection, ThreeVertexFamily) {
  const auto d = testing::infection_example({18, 19, 20});
  const auto r = verify_infection_argument(d, 1, odd_rank_family(d, 18), Window{0, 200});
  expect_consistent_family(r, 3);
}

TEST(Infection, FlagsInsufficientAndInvalidFamilies) {
  const auto d = testing::infection_example({6, 7});
  const auto few = verify_infection_argument(d, 1, odd_rank_family(d, 4), Window{0, 60});
  EXPECT_FALSE(few.sufficient_witnesses);
  EXPECT_FALSE(few.valid_family);
  EXPECT_TRUE(few.conclusion_consistent);
  EXPECT_FALSE(few.flags.empty());

  auto pts = odd_rank_family(d, 6);
  pts[1] = pts[0];
  const auto dup = verify_infection_argument(d, 1, pts, Window{0, 60});
  EXPECT_FALSE(dup.distinct);
  EXPECT_FALSE(dup.valid_family);

  std::vector<PointApprox> adjacent;
  for (Count r = 1; r <= 6; ++r) adjacent.push_back(repeating(path_unrank(d, 3, 0, r), {{0, 1}}));
  const auto shared = verify_infection_argument(d, 1, adjacent, Window{0, 60});
  EXPECT_FALSE(shared.valid_family);

  const auto none = verify_infection_argument(d, 1, {}, Window{0, 60});
  EXPECT_FALSE(none.sufficient_witnesses);
  EXPECT_TRUE(none.conclusion_consistent);
  PointApprox bad = pts[2];
  bad.base.edges[0].ordinal = 9;
  EXPECT_THROW(verify_infection_argument(d, 1, {bad}, Window{0, 60}), ContractError);
}

TEST(Search, WitnessFamilyIsSeededAndMeetsConstraints) {
  const auto d = testing::infection_example({6, 7});
  const PointApprox templ = repeating(path_unrank(d, 3, 0, 1), {{0, 1}});
  const Window w{0, 60};
  const auto a = search_witness_family(d, 1, templ, 6, w, 7);
  const auto b = search_witness_family(d, 1, templ, 6, w, 7);
  EXPECT_EQ(a, b);
  ASSERT_GE(a.size(), 2u);
  EXPECT_LE(a.size(), 6u);
  const auto r = verify_infection_argument(d, 1, a, w);
  EXPECT_TRUE(r.distinct);
  EXPECT_TRUE(r.pairwise_compatible);
  EXPECT_TRUE(r.pairwise_separated);
  EXPECT_TRUE(r.no_common_cuts);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = search_witness_family(d, 1, templ, 6, w, seed);
    if (f.size() < 6) continue;
    EXPECT_TRUE(verify_infection_argument(d, 1, f, w).conclusion_consistent);
  }
}

TEST(Search, SurgeryPartner) {
  const auto d = OrderedDiagram::from_sources({{{0, 0}}, {{0}, {0, 0}}, {{0, 1}, {1, 0}}});
  const PointApprox x = testing::finite_point(FinitePath{{{0, 1}, {0, 1}, {0, 1}}});
  const auto y = search_surgery_partner(d, 1, x, std::nullopt, 3);
  ASSERT_TRUE(y.has_value());
  EXPECT_NE(y->base, x.base);
  EXPECT_EQ(y, search_surgery_partner(d, 1, x, std::nullopt, 3));
  EXPECT_FALSE(search_surgery_partner(d, 1, x, Window{0, 5}, 3).has_value());
}

}  // namespace
}  // namespace bvd
