#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "sadi/combinat/cover.hpp"
#include "sadi/combinat/diffusion.hpp"
#include "sadi/combinat/fano.hpp"
#include "sadi/combinat/spread.hpp"

namespace sadi {
namespace {

std::vector<Deal> deals(std::initializer_list<const char*> texts) {
  std::vector<Deal> out;
  for (const char* t : texts) out.push_back(parse_deal(t));
  return out;
}

TEST(SpreadConditions, Examples) {
  const auto a = spread_conditions(3, 6, 3);
  EXPECT_TRUE(a.injection && a.coverage && a.avoidance);
  const auto b = spread_conditions(2, 4, 2);
  EXPECT_TRUE(b.injection && b.coverage && b.avoidance);
  EXPECT_FALSE(spread_conditions(2, 5, 2).coverage);
  EXPECT_FALSE(spread_conditions(2, 3, 2).avoidance);
}

TEST(BuildSpread, FirstValuesFollowTheCyclicBlocks) {
  const BasicSpread f = build_spread(3, 6, 3, std::uint64_t{1});
  EXPECT_EQ(f(1), (CardSet{1, 2, 3}));
  EXPECT_EQ(f(2), (CardSet{4, 5, 6}));
  EXPECT_TRUE(verify_spread(f));
  const BasicSpread g = build_spread(2, 4, 2, std::uint64_t{1});
  EXPECT_EQ(g(1), (CardSet{1, 2}));
  EXPECT_EQ(g(2), (CardSet{3, 4}));
  EXPECT_TRUE(verify_spread(g));
}

TEST(BuildSpread, FailureNamesTheInequality) {
  try {
    build_spread(2, 3, 2, std::uint64_t{0});
    FAIL() << "expected a precondition error";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("avoidance"), std::string::npos);
  }
}

TEST(VerifySpread, PrintedMapping) {
  BasicSpread f;
  f.domain = {9, 2, 1};
  f.codomain = CardSet::range(3, 9);
  f.n = 3;
  f.image = {CardSet{3, 4, 5}, CardSet{5, 6, 7}, CardSet{6, 7, 8}};
  EXPECT_TRUE(verify_spread(f));
  f.image[1] = f.image[0];
  EXPECT_FALSE(verify_spread(f));
}

TEST(BuildSpread, PropertyAlwaysVerifies) {
  for (std::size_t k = 2; k <= 12; ++k) {
    for (std::size_t m = 2; m <= 12; ++m) {
      for (std::size_t n = 1; n < m; ++n) {
        if (!spread_conditions(k, m, n).all()) continue;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
          EXPECT_TRUE(verify_spread(build_spread(k, m, n, seed))) << k << "," << m << "," << n;
        }
      }
    }
  }
}

TEST(SpreadConditions, CompleteAgainstBruteForce) {
  for (unsigned m = 2; m <= 7; ++m) {
    for (unsigned n = 1; n < m; ++n) {
      for (unsigned k = 2; k <= 8; ++k) {
        EXPECT_EQ(spread_conditions(k, m, n).all(), oracle::spread_exists(k, m, n)) << k << "," << m << "," << n;
      }
    }
  }
}

TEST(PinnedSpread, KeepsThePin) {
  Rng rng(5);
  const CardSet domain{1, 2, 9};
  const CardSet codomain = CardSet::range(3, 9);
  for (int i = 0; i < 20; ++i) {
    const BasicSpread f = pinned_spread(domain, 9, codomain, CardSet{3, 4, 5}, rng);
    EXPECT_EQ(f(9), (CardSet{3, 4, 5}));
    EXPECT_TRUE(verify_spread(f));
  }
}

TEST(IsDiffusion, Examples) {
  EXPECT_TRUE(is_diffusion(deals({"0,1|2", "1,2|0", "0,2|1"})));
  EXPECT_TRUE(is_diffusion(deals({"1,2|3,4,5|6,7,8,9", "1,9|5,6,7|2,3,4,8", "2,9|6,7,8|1,3,4,5"})));
  EXPECT_FALSE(is_diffusion(deals({"0,1|2", "0,2|1"})));
  EXPECT_TRUE(is_diffusion(deals({"·|3,4|5|·", "·|4,5|3|·", "·|3,5|4|·"})));
  EXPECT_FALSE(is_diffusion(deals({"0,1|2|3", "0,2|1|3"})));
}

TEST(TwoAgentDiffusion, OnlyDiffusionForTwoOne) {
  const Deal actual = parse_deal("0,1|2");
  const Diffusion d = two_agent_diffusion(actual, 3, std::uint64_t{0});
  EXPECT_EQ(d.front(), actual);
  EXPECT_TRUE(same_deals(d, deals({"0,1|2", "1,2|0", "0,2|1"})));
}

TEST(TwoAgentDiffusion, PropertyContainsActualAndIsDiffusion) {
  Rng rng(11);
  for (std::size_t a = 1; a <= 4; ++a) {
    for (std::size_t b = a; b <= 8; ++b) {
      for (std::size_t k = 2; k <= 7; ++k) {
        if (!two_agent_violation(a, b, k).empty()) continue;
        const DistributionType t({0, a, b}, CardSet::range(10, static_cast<Card>(10 + a + b)));
        std::vector<Card> cards = t.deck().cards();
        rng.shuffle(cards);
        const Deal actual({CardSet{}, CardSet(std::vector<Card>(cards.begin(), cards.begin() + a)),
                           CardSet(std::vector<Card>(cards.begin() + a, cards.end()))});
        const Diffusion d = two_agent_diffusion(actual, k, rng);
        EXPECT_EQ(d.size(), k);
        EXPECT_EQ(d.front(), actual);
        EXPECT_TRUE(is_diffusion(d)) << a << "," << b << "," << k;
      }
    }
  }
}

TEST(TwoAgentDiffusion, PreconditionFailure) {
  EXPECT_THROW(two_agent_diffusion(parse_deal("0|1,2,3"), 3, std::uint64_t{0}), PreconditionError);
  EXPECT_EQ(two_agent_violation(1, 3, 3), "b <= (k-1)a");
}

TEST(Fuse, CaseStudyDelta2) {
  const Diffusion d21 = deals({"·|3,4|5|·", "·|4,5|3|·", "·|3,5|4|·"});
  const Diffusion d22 = deals({"·|·|6,7|8,9,10", "·|·|8,9|6,7,10", "·|·|8,10|6,7,9"});
  const Diffusion d2 = fuse(d21, d22, DiffusionSpread{{0, 1, 2}});
  EXPECT_EQ(d2, deals({"·|3,4|5,6,7|8,9,10", "·|4,5|3,8,9|6,7,10", "·|3,5|4,8,10|6,7,9"}));
  EXPECT_TRUE(is_diffusion(d2));

  const Diffusion d1 = deals({"0,1|2|·|·", "1,2|0|·|·", "0,2|1|·|·"});
  const Diffusion d = fuse(d1, d2, DiffusionSpread{{0, 1, 2}});
  EXPECT_TRUE(is_diffusion(d));
  EXPECT_EQ(d.front(), parse_deal("0,1|2,3,4|5,6,7|8,9,10"));
}

TEST(Fuse, NeutralAndErrors) {
  const Diffusion g = deals({"0,1|2", "1,2|0", "0,2|1"});
  const Diffusion empty(3, parse_deal("|"));
  EXPECT_EQ(fuse(g, empty, DiffusionSpread{{2, 0, 1}}), g);
  EXPECT_THROW(fuse(g, g, DiffusionSpread{{0, 1, 2}}), InvalidArgument);
  EXPECT_THROW(fuse(g, empty, DiffusionSpread{{0, 0, 1}}), InvalidArgument);
  EXPECT_THROW(fuse(g, Diffusion(2, parse_deal("|")), DiffusionSpread{{0, 1}}), InvalidArgument);
}

TEST(Fuse, PropertyRandomInputsGiveDiffusions) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 3 + rng.index(3);
    const Deal left({CardSet{0, 1}, CardSet{2, 3, 4}, CardSet{}});
    const Deal right({CardSet{}, CardSet{5, 6}, CardSet{7, 8, 9}});
    const Diffusion g = two_agent_diffusion(left, k, rng);
    const Diffusion d = two_agent_diffusion(right, k, rng);
    const Diffusion f = fuse(g, d, random_diffusion_spread(k, 0, 0, rng));
    EXPECT_TRUE(is_diffusion(f));
    EXPECT_EQ(f.front(), combine(left, right));
  }
}

TEST(CoverPart1, Examples) {
  const CoverFamily a = cover_part1(16, 9, 4);
  EXPECT_TRUE(verify_cover(a));
  for (const auto& y : a.sets) EXPECT_EQ(y.size(), 7u);
  const CoverFamily b = cover_part1(25, 16, 5);
  EXPECT_TRUE(verify_cover(b));
  for (const auto& y : b.sets) EXPECT_EQ(y.size(), 9u);
  EXPECT_THROW(cover_part1(16, 5, 4), PreconditionError);
}

TEST(CoverPart2, Examples) {
  EXPECT_THROW(cover_part2(20, 4, 1), PreconditionError);
  const CoverFamily a = cover_part2(21, 4, 1);
  EXPECT_EQ(a.sets.size(), 6u);
  EXPECT_TRUE(verify_cover(a));
  EXPECT_THROW(cover_part2(30, 5, 1), PreconditionError);
  const CoverFamily b = cover_part2(30, 5, 2);
  EXPECT_EQ(b.sets.size(), 6u);
  EXPECT_TRUE(verify_cover(b));
  for (std::size_t i = 0; i < b.sets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) EXPECT_TRUE(b.sets[i].disjoint(b.sets[j]));
  }
}

TEST(Fano, LinesFormAPlane) {
  const auto lines = fano_lines();
  EXPECT_TRUE(is_fano_plane(lines));
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(lines[i].intersection_size(lines[j]), 1u);
  }
  EXPECT_EQ(all_fano_planes(CardSet::range(0, 7)).size(), 30u);
}

TEST(Fano, BijectionRespectsPinAndNonIncidence) {
  const auto lines = fano_lines();
  const FanoBijection b = fano_bijection(6, CardSet{0, 1, 2});
  EXPECT_EQ(b.at(6), (CardSet{0, 1, 2}));
  EXPECT_TRUE(is_fano_bijection(lines, b));
  const FanoBijection printed{{0, CardSet{2, 4, 5}}, {1, CardSet{0, 3, 4}}, {2, CardSet{0, 5, 6}},
                            {3, CardSet{1, 4, 6}}, {4, CardSet{1, 3, 5}}, {5, CardSet{2, 3, 6}},
                            {6, CardSet{0, 1, 2}}};
  EXPECT_TRUE(is_fano_bijection(lines, printed));
  const auto all = all_fano_bijections(lines, 6, CardSet{0, 1, 2});
  EXPECT_NE(std::find(all.begin(), all.end(), printed), all.end());
  EXPECT_THROW(fano_bijection(0, CardSet{0, 1, 2}), InvalidArgument);
  for (Card x = 0; x < 7; ++x) {
    for (const auto& l : lines) {
      if (l.contains(x)) continue;
      EXPECT_TRUE(is_fano_bijection(lines, fano_bijection(x, l)));
    }
  }
}

// With Alice holding a line and Bob three other points, exactly one line
// avoids Bob's hand.
TEST(Fano, BobSeesOneLineAvoidingHisHand) {
  const auto lines = fano_lines();
  for (const auto& alice : lines) {
    const CardSet rest = CardSet::range(0, 7) - alice;
    for_each_combination(rest.cards(), 3, [&](const std::vector<Card>& bob) {
      std::size_t avoiding = 0;
      for (const auto& l : lines) avoiding += l.disjoint(CardSet(bob));
      EXPECT_EQ(avoiding, 1u);
      return true;
    });
  }
}

}  // namespace
}  // namespace sadi
