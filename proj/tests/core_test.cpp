#include <gtest/gtest.h>

#include <map>
#include <set>

#include "sadi/announcement.hpp"
#include "sadi/cards.hpp"
#include "sadi/protocol.hpp"
#include "sadi/rational.hpp"

namespace sadi {
namespace {

// Independent oracle: n! / prod s_P! by repeated exact division.
std::uint64_t multinomial_oracle(const std::vector<std::size_t>& sizes) {
  std::uint64_t n = 0;
  std::uint64_t result = 1;
  for (std::size_t s : sizes) {
    for (std::size_t i = 1; i <= s; ++i) {
      ++n;
      result = result * n / i;
    }
  }
  return result;
}

TEST(DealCount, MatchesMultinomialOracle) {
  EXPECT_EQ(deal_count(DistributionType({2, 3, 4})), 1260u);
  EXPECT_EQ(multinomial_oracle({2, 3, 4}), 1260u);
  EXPECT_EQ(deal_count(DistributionType({3, 3, 1})), 140u);
  EXPECT_EQ(multinomial_oracle({3, 3, 1}), 140u);
  EXPECT_EQ(deal_count(DistributionType({5, 0})), 1u);
  EXPECT_EQ(deal_count(DistributionType({2, 3, 3, 3})), 92400u);
  EXPECT_EQ(deal_count(DistributionType({6, 7, 1})), multinomial_oracle({6, 7, 1}));
}

TEST(DealCount, OverflowIsReported) {
  EXPECT_THROW(deal_count(DistributionType({30, 30, 30})), OverflowError);
}

TEST(EnumerateDeals, SmallTypeListsEachDealOnce) {
  const auto deals = enumerate_deals(DistributionType({2, 1}));
  ASSERT_EQ(deals.size(), 3u);
  std::set<std::string> seen;
  for (const auto& d : deals) seen.insert(format_deal(d));
  EXPECT_EQ(seen, (std::set<std::string>{"0,1|2", "0,2|1", "1,2|0"}));
}

TEST(EnumerateDeals, StreamLengthMatchesCount) {
  for (const auto& sizes : std::vector<std::vector<std::size_t>>{{2, 3, 4}, {3, 3, 1}, {1, 1, 1, 1}, {4, 0, 2}}) {
    const DistributionType t(sizes);
    const auto deals = enumerate_deals(t);
    EXPECT_EQ(deals.size(), deal_count(t));
    std::set<Deal> unique(deals.begin(), deals.end());
    EXPECT_EQ(unique.size(), deals.size());
    for (const auto& d : deals) EXPECT_TRUE(d.has_type(t));
  }
}

TEST(EnumerateDeals, AllCardsToOneAgent) {
  const auto deals = enumerate_deals(DistributionType({3, 0}));
  ASSERT_EQ(deals.size(), 1u);
  EXPECT_EQ(format_deal(deals[0]), "0,1,2|·");
}

TEST(EnumerateDeals, BudgetRefusal) {
  EXPECT_THROW(enumerate_deals(DistributionType({2, 3, 4}), 1000), BudgetExceeded);
}

TEST(EnumerateDeals, CanonicalOrderIsDeterministic) {
  const auto a = enumerate_deals(DistributionType({2, 2, 1}));
  const auto b = enumerate_deals(DistributionType({2, 2, 1}));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}

TEST(Restrict, CaseStudySubDeal) {
  const Deal h = parse_deal("0,1|2,3,4|5,6,7|8,9,10");
  EXPECT_EQ(format_deal(restrict(h, CardSet{3, 4, 5})), "·|3,4|5|·");
  EXPECT_EQ(restrict(h, h.deck()), h);
  const Deal empty = restrict(h, CardSet{});
  EXPECT_EQ(empty.type().sizes(), (std::vector<std::size_t>{0, 0, 0, 0}));
  EXPECT_THROW(restrict(h, CardSet{3, 11}), InvalidArgument);
}

TEST(ParseDeal, RoundTripAndErrors) {
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  EXPECT_EQ(format_deal(h), "1,2|3,4,5|6,7,8,9");
  EXPECT_EQ(parse_deal(format_deal(parse_deal("·|1|0,2"))), parse_deal("|1|0,2"));
  EXPECT_THROW(parse_deal("1,2|2,3"), InvalidArgument);
  EXPECT_THROW(parse_deal("1,x|2"), InvalidArgument);
}

TEST(ExtensionContains, PrintedExamples) {
  const DistributionType t({2, 3, 4}, CardSet::range(1, 10));
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  EXPECT_TRUE(extension_contains(Announcement::counts_in(t, 0, CardSet{1, 2, 9}, 2), h));
  EXPECT_TRUE(extension_contains(Announcement::pass(), h));
  const Announcement eq1 = Announcement::deal_set({parse_deal("1,2|3,4,5|6,7,8,9"),
                                                   parse_deal("1,9|5,6,7|2,3,4,8"),
                                                   parse_deal("2,9|6,7,8|1,3,4,5")});
  EXPECT_TRUE(extension_contains(eq1, h));
  EXPECT_FALSE(extension_contains(eq1, parse_deal("1,3|2,4,5|6,7,8,9")));
  EXPECT_THROW(extension_contains(Announcement::end(), h), InvalidArgument);
}

TEST(ExtensionContains, RestrictedLooksAtSubDeck) {
  const Deal h = parse_deal("0,1|2,3,4|5,6,7|8,9,10");
  const Announcement inner = Announcement::deal_set({parse_deal("·|3,4|5|·"), parse_deal("·|4,5|3|·")});
  const Announcement r = Announcement::restricted(CardSet{3, 4, 5}, inner);
  EXPECT_TRUE(extension_contains(r, h));
  EXPECT_FALSE(extension_contains(r, parse_deal("0,1|2,3,5|4,6,7|8,9,10")));
  EXPECT_TRUE(Announcement::restricted(CardSet{3}, Announcement::pass()).is_pass());
}

// Every symbolic announcement agrees with its explicit deal-set expansion.
TEST(ExtensionContains, AgreesWithExpansion) {
  const DistributionType t({2, 2, 1});
  const auto all = enumerate_deals(t);
  std::vector<Announcement> samples;
  for_each_combination(t.deck().cards(), 2, [&](const std::vector<Card>& s) {
    for (std::size_t n = 0; n <= 2; ++n) samples.push_back(Announcement::counts_in(t, 1, CardSet(s), n));
    return true;
  });
  samples.push_back(Announcement::hands_in(0, {CardSet{0, 1}, CardSet{2, 3}}));
  samples.push_back(Announcement::restricted(CardSet{0, 1, 2}, Announcement::hands_in(2, {CardSet{}, CardSet{1}})));
  for (const auto& a : samples) {
    const auto expanded = expand_extension(a, t);
    std::set<Deal> expected;
    for (const auto& d : all) {
      bool in = false;
      switch (a.kind()) {
        case AnnouncementKind::kCountsIn: in = (d.hand(a.agent()) & a.cards()).size() == a.count(); break;
        case AnnouncementKind::kHandsIn:
          in = d.hand(0) == CardSet{0, 1} || d.hand(0) == CardSet{2, 3};
          break;
        default: {
          const Card c = d.hand(2)[0];
          in = c == 1 || c > 2;
          break;
        }
      }
      if (in) expected.insert(d);
    }
    EXPECT_EQ(std::set<Deal>(expanded.begin(), expanded.end()), expected) << a.key();
  }
}

TEST(AnnouncementsEqual, CountIdentity) {
  const DistributionType t({2, 3, 4}, CardSet::range(1, 10));
  const CardSet s{1, 2, 9};
  const auto a = Announcement::counts_in(t, 0, s, 2);
  EXPECT_TRUE(announcements_equal(t, a, a));
  EXPECT_TRUE(announcements_equal(t, a, Announcement::counts_in(t, 0, t.deck() - s, 0)));
  EXPECT_EQ(a, Announcement::counts_in(t, 0, t.deck() - s, 0));
  const DistributionType small({2, 1});
  EXPECT_FALSE(announcements_equal(small, Announcement::counts_in(small, 0, CardSet{0, 1}, 1),
                                   Announcement::counts_in(small, 0, CardSet{0, 2}, 1)));
}

TEST(AnnouncementKey, SetSemantics) {
  const auto a = Announcement::hands_in(1, {CardSet{1}, CardSet{2}});
  const auto b = Announcement::hands_in(1, {CardSet{2}, CardSet{1}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.key(), b.key());
  EXPECT_NE(a, Announcement::hands_in(0, {CardSet{1}, CardSet{2}}));
}

TEST(TurnAgent, Examples) {
  EXPECT_EQ(turn_agent(1, 3), 0u);
  EXPECT_EQ(turn_agent(4, 3), 0u);
  EXPECT_EQ(turn_agent(6, 3), 2u);
  EXPECT_THROW(turn_agent(0, 3), InvalidArgument);
}

TEST(Rational, ExactArithmetic) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ(Rational(-2, -4), Rational(1, 2));
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_THROW(Rational(1, 0), InvalidArgument);
  EXPECT_THROW(Rational(INT64_MAX) * Rational(4), OverflowError);
}

}  // namespace
}  // namespace sadi
