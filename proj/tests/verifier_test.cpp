#include <gtest/gtest.h>

#include <chrono>
#include <vector>

#include "sadi/protocols/fano.hpp"
#include "sadi/protocols/k_normal.hpp"
#include "sadi/protocols/three_agent.hpp"
#include "sadi/verifier/verify.hpp"

using namespace sadi;

namespace {

const DistributionType kType234({2, 3, 4}, CardSet::range(1, 10));

// Every agent passes once, then the run ends.
class PassOnly final : public Protocol {
 public:
  explicit PassOnly(DistributionType t) : Protocol(std::move(t)) {}
  std::string name() const override { return "PassOnly"; }
  bool finished(const sadi::Run& rho) const override { return rho.size() >= agents(); }

 protected:
  bool permits_action(const Deal&, const sadi::Run&, const Announcement& a) const override { return a.is_pass(); }
  Announcement choose_action(const Deal&, const sadi::Run&, Rng&) const override { return Announcement::pass(); }
  std::optional<std::vector<Announcement>> enumerate_actions(const Deal&, const sadi::Run&,
                                                             std::size_t) const override {
    return std::vector<Announcement>{Announcement::pass()};
  }
};

// The first agent announces the whole deal.
class Blurt final : public Protocol {
 public:
  explicit Blurt(DistributionType t) : Protocol(std::move(t)) {}
  std::string name() const override { return "Blurt"; }
  bool finished(const sadi::Run& rho) const override { return !rho.empty(); }

 protected:
  bool permits_action(const Deal& d, const sadi::Run&, const Announcement& a) const override {
    return a == Announcement::deal_set({d});
  }
  Announcement choose_action(const Deal& d, const sadi::Run&, Rng&) const override {
    return Announcement::deal_set({d});
  }
  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& d, const sadi::Run&,
                                                             std::size_t) const override {
    return std::vector<Announcement>{Announcement::deal_set({d})};
  }
};

// The first agent says she holds none of the second agent's smallest card:
// true, but it depends on a hand she cannot see.
class Peek final : public Protocol {
 public:
  explicit Peek(DistributionType t) : Protocol(std::move(t)) {}
  std::string name() const override { return "Peek"; }
  bool finished(const sadi::Run& rho) const override { return !rho.empty(); }

 protected:
  Announcement leak(const Deal& d) const {
    return Announcement::counts_in(type(), 0, CardSet{d.hand(1)[0]}, 0);
  }
  bool permits_action(const Deal& d, const sadi::Run&, const Announcement& a) const override { return a == leak(d); }
  Announcement choose_action(const Deal& d, const sadi::Run&, Rng&) const override { return leak(d); }
  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& d, const sadi::Run&,
                                                             std::size_t) const override {
    return std::vector<Announcement>{leak(d)};
  }
};

// Nothing is ever allowed.
class Stuck final : public Protocol {
 public:
  explicit Stuck(DistributionType t) : Protocol(std::move(t)) {}
  std::string name() const override { return "Stuck"; }
  bool finished(const sadi::Run&) const override { return false; }

 protected:
  bool permits_action(const Deal&, const sadi::Run&, const Announcement&) const override { return false; }
  Announcement choose_action(const Deal&, const sadi::Run&, Rng&) const override { return Announcement::pass(); }
  std::optional<std::vector<Announcement>> enumerate_actions(const Deal&, const sadi::Run&,
                                                             std::size_t) const override {
    return std::vector<Announcement>{};
  }
};

bool implications_hold(const VerificationReport& r) {
  auto h = [&](const char* p) { return r.holds(p); };
  if (h("S") && r.verdicts.count("DS") && !h("DS")) return false;
  if (h("SS") && r.verdicts.count("S") && !h("S")) return false;
  if (h("I") && r.verdicts.count("WI") && !h("WI")) return false;
  return true;
}

}  // namespace

TEST(Ignorance, EmptyRunGivesEveryDeal) {
  const PassOnly p(DistributionType({1, 2}));
  EXPECT_EQ(ignorance_set(p, sadi::Run{}).deals.size(), 3u);
}

TEST(Ignorance, WorkedExampleRunHasThreeDeals) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const sadi::Run run = execute(p, h, seed);
    const auto ig = ignorance_set(p, run);
    EXPECT_TRUE(same_deals(ig.deals, *p.certified_diffusion(run)));
    const auto w = witness_ignorance_set(p, run);
    EXPECT_TRUE(w.exact);
    EXPECT_TRUE(same_deals(w.deals, ig.deals));
  }
}

TEST(Verify, ThreeAgentAllBranches) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  PropertySet props = PropertySet::parse("WI,I,DS,S,S_P0,k=3");
  const auto r = verify(p, props);
  EXPECT_EQ(r.coverage, "all branches of all deals");
  EXPECT_EQ(r.deals_checked, 1260u);
  EXPECT_TRUE(r.all_hold()) << to_json(r).dump(2);
  EXPECT_TRUE(implications_hold(r));
  EXPECT_FALSE(check_k_solution(p, 4).holds("k-diffusion"));
}

TEST(Verify, PassOnlyIsNotInformative) {
  const PassOnly p(DistributionType({1, 1, 1}));
  const auto r = check_informative(p, InformativityLevel::kI);
  EXPECT_FALSE(r.holds("I"));
  ASSERT_FALSE(r.counterexamples.empty());
  const auto& c = r.counterexamples.front();
  EXPECT_TRUE(is_truthful_execution(p, c.deal, c.run));
  ASSERT_TRUE(c.other);
  EXPECT_TRUE(is_truthful_execution(p, *c.other, c.run));
  EXPECT_EQ(c.other->hand(*c.agent), c.deal.hand(*c.agent));
  EXPECT_TRUE(check_safety(p, SafetyLevel::kS).holds("S"));
}

TEST(Verify, SingletonDealSetIsNotDealSafe) {
  const Blurt p(DistributionType({2, 2, 1}));
  const auto r = check_safety(p, SafetyLevel::kDS);
  EXPECT_FALSE(r.holds("DS"));
  EXPECT_TRUE(check_informative(p, InformativityLevel::kI).holds("I"));
}

TEST(Verify, MeasurabilityCounterexample) {
  const Peek p(DistributionType({2, 2, 2}));
  const auto r = check_wellformed(p);
  EXPECT_FALSE(r.holds("wellformed"));
  ASSERT_FALSE(r.counterexamples.empty());
  const auto& c = r.counterexamples.front();
  ASSERT_TRUE(c.other);
  EXPECT_EQ(c.deal.hand(*c.agent), c.other->hand(*c.agent));
}

TEST(Verify, EmptyActionSetCounterexample) {
  const Stuck p(DistributionType({1, 1}));
  const auto r = check_wellformed(p);
  EXPECT_FALSE(r.holds("wellformed"));
  EXPECT_EQ(r.counterexamples.front().detail, "empty action set");
}

TEST(Verify, FanoAllDealsStronglySafe) {
  const Fano331Protocol p(DistributionType({3, 3, 1}));
  const auto r = verify(p, PropertySet::parse("I,S,SS,k=7"));
  EXPECT_EQ(r.deals_checked, 140u);
  EXPECT_TRUE(r.all_hold()) << to_json(r).dump(2);
  EXPECT_TRUE(implications_hold(r));
}

TEST(Verify, WitnessInsideExhaustive) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  VerifyOptions opt;
  opt.branches = VerifyOptions::Branches::kSeeded;
  opt.deals = VerifyOptions::Deals::kSample;
  opt.samples = 30;
  opt.seed = 9;
  const auto props = PropertySet::parse("I,S,k=3");
  const auto ex = verify(p, props, opt);
  opt.ignorance = IgnoranceMode::kWitness;
  const auto wi = verify(p, props, opt);
  EXPECT_TRUE(ex.all_hold());
  EXPECT_TRUE(wi.all_hold());
  EXPECT_EQ(ex.runs_checked, wi.runs_checked);
  EXPECT_GT(ex.runs_checked, 20u);
}

TEST(Verify, KNormalWitnessIsFast) {
  const auto p = solve_k_normal(DistributionType({5, 12, 18, 24}), 6);
  VerifyOptions opt;
  opt.branches = VerifyOptions::Branches::kSeeded;
  opt.deals = VerifyOptions::Deals::kSample;
  opt.ignorance = IgnoranceMode::kWitness;
  opt.samples = 10;
  const auto start = std::chrono::steady_clock::now();
  const auto r = verify(*p, PropertySet::parse("I,S,k=6"), opt);
  EXPECT_TRUE(r.all_hold()) << to_json(r).dump(2);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(20));
}

TEST(Verify, TraceRoundTrip) {
  const ThreeAgentSpreadProtocol p(kType234, 0);
  const Deal h = parse_deal("1,2|3,4,5|6,7,8,9");
  const sadi::Run run = execute(p, h, 3);
  const sadi::Run back = run_from_json(nlohmann::json::parse(to_json(run).dump()));
  EXPECT_EQ(back, run);
  const auto props = PropertySet::parse("I,S");
  EXPECT_TRUE(verify_trace(p, h, back, props).all_hold());
  sadi::Run bad = back;
  bad.erase(bad.begin());
  EXPECT_FALSE(verify_trace(p, h, bad, props).holds("execution"));
}

TEST(PropertySet, Parse) {
  const auto p = PropertySet::parse("I,S_P2,k=7");
  EXPECT_TRUE(p.informative);
  EXPECT_EQ(p.safe_for, std::vector<Agent>{2});
  EXPECT_EQ(p.k, 7u);
  EXPECT_THROW(PropertySet::parse("Q"), InvalidArgument);
  EXPECT_THROW(PropertySet::parse("k=x"), InvalidArgument);
}
