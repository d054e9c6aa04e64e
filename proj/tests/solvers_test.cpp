#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "sadi/combinat/diffusion.hpp"
#include "sadi/protocols/bounds.hpp"
#include "sadi/protocols/cover_hands.hpp"
#include "sadi/protocols/less_big.hpp"

using namespace sadi;

namespace {

Deal random_deal(const DistributionType& type, Rng& rng) {
  std::vector<Card> deck = type.deck().cards();
  rng.shuffle(deck);
  std::vector<CardSet> hands;
  std::size_t at = 0;
  for (std::size_t s : type.sizes()) {
    hands.emplace_back(std::vector<Card>(deck.begin() + static_cast<std::ptrdiff_t>(at),
                                         deck.begin() + static_cast<std::ptrdiff_t>(at + s)));
    at += s;
  }
  return Deal(std::move(hands));
}

// Brute-force ignorance set: every deal under which the run is an execution.
std::vector<Deal> brute_ignorance(const Protocol& p, const sadi::Run& run) {
  std::vector<Deal> out;
  for_each_deal(p.type(), [&](const Deal& d) {
    if (is_execution(p, d, run)) out.push_back(d);
    return true;
  });
  return out;
}

void check_runs(const ProtocolPtr& p, std::size_t k, int trials, std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Deal h = random_deal(p->type(), rng);
    const sadi::Run run = execute(*p, h, seed + static_cast<std::uint64_t>(t));
    ASSERT_TRUE(is_terminal(run));
    EXPECT_TRUE(is_execution(*p, h, run));
    const auto theta = p->certified_diffusion(run);
    ASSERT_TRUE(theta);
    EXPECT_TRUE(is_k_diffusion(*theta, k));
    EXPECT_NE(std::find(theta->begin(), theta->end(), h), theta->end());
  }
}

}  // namespace

TEST(Lopsided, Preconditions) {
  EXPECT_EQ(lopsided_violation(DistributionType({9, 4, 3}), 4), "");
  EXPECT_EQ(lopsided_violation(DistributionType({3, 3, 3}), 4), "|s| >= k^2");
  EXPECT_EQ(lopsided_violation(DistributionType({10, 4, 2}), 4), "every player holds at least three cards");
  EXPECT_THROW(solve_lopsided(DistributionType({3, 3, 3}), 4), PreconditionError);
}

TEST(Lopsided, NineFourThree) { check_runs(solve_lopsided(DistributionType({9, 4, 3}), 4), 4, 20, 1); }

TEST(Lopsided, IgnoranceSetIsTheCertifiedDiffusion) {
  const auto p = solve_lopsided(DistributionType({6, 3, 3}), 3);
  Rng rng(5);
  for (int t = 0; t < 3; ++t) {
    const Deal h = random_deal(p->type(), rng);
    const sadi::Run run = execute(*p, h, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(same_deals(brute_ignorance(*p, run), *p->certified_diffusion(run)));
  }
}

TEST(Lopsided, EnumeratedAnswersArePermitted) {
  const auto p = solve_lopsided(DistributionType({6, 3, 3}), 3);
  const Deal h = parse_deal("0,1,2,3,4,5|6,7,8|9,10,11");
  const sadi::Run run = execute(*p, h, 2);
  const sadi::Run prefix(run.begin(), run.begin() + 1);
  const auto options = p->actions(h, prefix, 100000);
  ASSERT_TRUE(options);
  EXPECT_FALSE(options->empty());
  for (const auto& a : *options) EXPECT_TRUE(p->permits(h, prefix, a));
}

TEST(BigHand, NineHundredAndOneHundred) {
  const DistributionType type({900, 100});
  EXPECT_EQ(big_hand_violation(type), "");
  const auto bp = big_hand_parameters(type);
  EXPECT_EQ(bp.c, 32u);
  EXPECT_EQ(bp.b, 100u);
  const auto family = cover_part2(1000, bp.b, bp.c);
  EXPECT_LE(detail::max_pairwise_overlap(family.sets), bp.c + 1);
  EXPECT_LT(bp.c + 1, 100u);
  check_runs(solve_big_hand(type), family.sets.size(), 2, 3);
}

TEST(BigHand, Preconditions) {
  EXPECT_EQ(big_hand_violation(DistributionType({900, 30})), "every player holds more than 8m^2 cards");
  EXPECT_EQ(big_hand_violation(DistributionType({500, 500})), "s_A >= |s| - 2m sqrt(|s|)");
}

TEST(LessBig, DelegatesWhenLopsided) {
  const auto p = solve_less_big(DistributionType({48, 10, 8}), 4);
  EXPECT_EQ(p->name(), "Lopsided");
}

TEST(LessBig, RecursesThenDelegates) {
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{{46, 10, 10}, {46, 17, 3}, {47, 12, 8}}) {
    const DistributionType type(sizes);
    ASSERT_EQ(less_big_violation(type, 4), "");
    ASSERT_NE(lopsided_violation(type, 4), "");
    check_runs(solve_less_big(type, 4), 4, 5, 7);
  }
}

TEST(LessBig, ConditionsReportedByNumber) {
  EXPECT_EQ(less_big_violation(DistributionType({20, 20, 20}), 3), "k >= 4");
  EXPECT_NE(less_big_violation(DistributionType({10, 10, 10}), 4).find("condition"), std::string::npos);
}

TEST(SimpleBound, EqualityWhenAIsNOverM) {
  const auto b = simple_bound_check(20, 7, 3, 60);
  EXPECT_TRUE(b.bound1_holds);
  EXPECT_TRUE(b.bound2_holds);
  EXPECT_EQ(b.lhs1, b.rhs1);
}

TEST(SimpleBound, Hypotheses) {
  EXPECT_THROW(simple_bound_check(10, 7, 3, 60), PreconditionError);
  EXPECT_THROW(simple_bound_check(0, 7, 3, 60), InvalidArgument);
  EXPECT_NO_THROW(simple_bound_check(30, 3, 2, 60));
}
