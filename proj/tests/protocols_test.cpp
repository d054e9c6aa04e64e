#include <gtest/gtest.h>

#include <cstdint>
#include <optional>

#include "sadi/combinat/diffusion.hpp"
#include "sadi/protocols/fano.hpp"
#include "sadi/protocols/three_agent.hpp"
#include "sadi/protocols/two_agent.hpp"

using namespace sadi;

namespace {

const DistributionType kType234({2, 3, 4}, CardSet::range(1, 10));

std::vector<Deal> deals(std::initializer_list<const char*> texts) {
  std::vector<Deal> out;
  for (const char* t : texts) out.push_back(parse_deal(t));
  return out;
}

}  // namespace

TEST(ThreeAgent, Preconditions) {
  EXPECT_EQ(three_agent_violation(kType234, 0), "");
  EXPECT_NE(three_agent_violation(DistributionType({1, 3, 4}), 0), "");
  EXPECT_NE(three_agent_violation(DistributionType({2, 2, 3}), 0), "");
  EXPECT_NE(three_agent_violation(DistributionType({2, 3}), 0), "");
  EXPECT_THROW(ThreeAgentSpreadProtocol(DistributionType({2, 2, 3}), 0), PreconditionError);
}

TEST(ThreeAgent, RunShapeOnCaseStudyDeal) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const sadi::Run run = execute(p, h, seed);
    EXPECT_EQ(run[0].kind(), AnnouncementKind::kCountsIn);
    const auto ext = p.extended_hand(run);
    ASSERT_TRUE(ext);
    EXPECT_TRUE(h.hand(0).is_subset_of(*ext));
    const bool cath_holds = h.hand(2).intersection_size(*ext) == 1;
    ASSERT_EQ(run.size(), cath_holds ? 4u : 3u);
    EXPECT_EQ(run[1].kind(), cath_holds ? AnnouncementKind::kPass : AnnouncementKind::kDealSet);
    EXPECT_TRUE(run.back().is_end());
    EXPECT_TRUE(is_execution(p, h, run));
    const auto theta = p.certified_diffusion(run);
    ASSERT_TRUE(theta);
    EXPECT_TRUE(is_k_diffusion(*theta, 3));
  }
}

TEST(ThreeAgent, SomeSeedReproducesTheWorkedAnnouncement) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  const auto expected = deals({"1,2|3,4,5|6,7,8,9", "1,9|5,6,7|2,3,4,8", "2,9|6,7,8|1,3,4,5"});
  std::optional<std::uint64_t> hit;
  for (std::uint64_t seed = 0; seed < 20000 && !hit; ++seed) {
    const sadi::Run run = execute(p, h, seed);
    if (run[1].is_pass() && run.size() == 4 && same_deals(run[2].deals(), expected)) hit = seed;
  }
  ASSERT_TRUE(hit);
  const sadi::Run run = execute(p, h, *hit);
  EXPECT_EQ(run[0].cards(), CardSet({1, 2, 9}));
  EXPECT_EQ(run[0].count(), 2u);
}

TEST(ThreeAgent, RejectsWrongDealSets) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  const sadi::Run rho{Announcement::counts_in(kType234, 0, CardSet({1, 2, 9}), 2), Announcement::pass()};
  EXPECT_TRUE(p.permits(h, rho, Announcement::deal_set(
                                   deals({"1,2|3,4,5|6,7,8,9", "1,9|5,6,7|2,3,4,8", "2,9|6,7,8|1,3,4,5"}))));
  // avoidance fails: 5 is common to all of Bob's hands
  EXPECT_FALSE(p.permits(h, rho, Announcement::deal_set(
                                    deals({"1,2|3,4,5|6,7,8,9", "1,9|5,6,7|2,3,4,8", "2,9|5,7,8|1,3,4,6"}))));
  EXPECT_FALSE(p.permits(h, rho, Announcement::pass()));
  EXPECT_FALSE(p.permits(h, sadi::Run{}, Announcement::counts_in(kType234, 0, CardSet({1, 3, 9}), 2)));
}

TEST(ThreeAgent, EnumeratedActionsArePermitted) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  const auto first = p.actions(h, sadi::Run{}, 100);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->size(), 7u);
  for (const auto& a : *first) EXPECT_TRUE(p.permits(h, sadi::Run{}, a));
  const sadi::Run rho{Announcement::counts_in(kType234, 0, CardSet({1, 2, 9}), 2), Announcement::pass()};
  const auto third = p.actions(h, rho, 100000);
  ASSERT_TRUE(third);
  EXPECT_FALSE(third->empty());
  for (const auto& a : *third) EXPECT_TRUE(p.permits(h, rho, a));
}

TEST(ThreeAgent, FirstMoverShiftsTheAnnouncement) {
  const ThreeAgentSpreadProtocol p(kType234, 0, 1);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  const sadi::Run run = execute(p, h, 3);
  EXPECT_TRUE(run[0].is_pass());
  EXPECT_TRUE(run[1].is_pass());
  EXPECT_EQ(run[2].kind(), AnnouncementKind::kCountsIn);
}

TEST(TwoAgent, EmptyRunAndDiffusion) {
  const Deal h = parse_deal("1,2|3,4,5,6");
  const auto [p, delta] = solve_two_agent(h, 3, 1);
  EXPECT_EQ(execute(*p, h, 0), sadi::Run{Announcement::end()});
  EXPECT_TRUE(is_k_diffusion(delta, 3));
  EXPECT_EQ(delta.front(), h);
  EXPECT_THROW(TwoAgentProtocol(DistributionType({1, 1}), 3), PreconditionError);
}

TEST(Fano331, RunIsAValidSevenDiffusion) {
  const DistributionType type({3, 3, 1});
  const Fano331Protocol p(type);
  const Deal h = parse_deal("0,1,2|3,4,5|6");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const sadi::Run run = execute(p, h, seed);
    ASSERT_EQ(run.size(), 3u);
    EXPECT_EQ(run[0].kind(), AnnouncementKind::kHandsIn);
    EXPECT_EQ(run[1].kind(), AnnouncementKind::kDealSet);
    EXPECT_TRUE(is_execution(p, h, run));
    const auto theta = p.certified_diffusion(run);
    ASSERT_TRUE(theta);
    EXPECT_TRUE(is_k_diffusion(*theta, 7));
  }
}

TEST(Fano331, EnumeratesSixPlanesThroughTheHand) {
  const Fano331Protocol p(DistributionType({3, 3, 1}));
  const Deal h = parse_deal("0,1,2|3,4,5|6");
  const auto planes = p.actions(h, sadi::Run{}, 100);
  ASSERT_TRUE(planes);
  EXPECT_EQ(planes->size(), 6u);
  const sadi::Run rho{planes->front()};
  const auto sets = p.actions(h, rho, 10000);
  ASSERT_TRUE(sets);
  for (const auto& a : *sets) {
    EXPECT_TRUE(p.permits(h, rho, a));
    EXPECT_TRUE(is_k_diffusion(a.deals(), 7));
  }
}

TEST(FanoLine, LineAndComplement) {
  const FanoLineProtocol p(DistributionType({4, 3}));
  const Deal h = parse_deal("0,1,2,3|4,5,6");
  const sadi::Run run = execute(p, h, 5);
  ASSERT_EQ(run.size(), 3u);
  EXPECT_TRUE(run[0].is_pass());
  const auto theta = p.certified_diffusion(run);
  ASSERT_TRUE(theta);
  EXPECT_EQ(theta->size(), 7u);
  EXPECT_TRUE(is_k_diffusion(*theta, 7));
  EXPECT_THROW(FanoLineProtocol(DistributionType({3, 3, 1})), PreconditionError);
}
