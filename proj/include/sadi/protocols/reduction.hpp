#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sadi/combinat/diffusion.hpp"
#include "sadi/protocol.hpp"

namespace sadi {

/// How agents pick splitting sets, and which protocols solve the two parts.
/// Everything an agent does here depends only on the type and her own hand.
class SplittingStrategy {
 public:
  virtual ~SplittingStrategy() = default;

  virtual std::string name() const = 0;
  virtual std::size_t k() const = 0;

  /// True when agent p holding `hand` has a splitting set.
  virtual bool splits(const DistributionType& type, Agent p, const CardSet& hand) const = 0;
  /// True when `t` is one of the splitting sets p may choose.
  virtual bool allows(const DistributionType& type, Agent p, const CardSet& hand, const CardSet& t) const = 0;
  virtual CardSet choose(const DistributionType& type, Agent p, const CardSet& hand, Rng& rng) const = 0;
  virtual std::optional<std::vector<CardSet>> enumerate(const DistributionType& /*type*/, Agent /*p*/,
                                                        const CardSet& /*hand*/, std::size_t /*limit*/) const {
    return std::nullopt;
  }

  /// A protocol k-solving the part type `sub`, or nullptr when `sub` has two
  /// holders and needs no announcements. Throws ProtocolDefect when the
  /// part is not covered.
  virtual ProtocolPtr sub_protocol(const DistributionType& sub, Agent first_mover) const = 0;
};

using StrategyPtr = std::shared_ptr<const SplittingStrategy>;

/// The reduction protocol. A terminal run has the shape
///   rho0 * rho1 * rhoT * rhoR * rho2 * Theta * End
/// where rho0 passes until the first agent P* able to split, rho1 is P*'s
/// "I hold t cards from T" followed by the same count from every other
/// agent, rhoT and rhoR are the two sub-protocol runs lifted to the full
/// deck, rho2 passes until the first agent Q* holding cards on both sides,
/// and Theta is Q*'s fusion of the two k-diffusions.
///
/// T is the set as it appears in P*'s canonical announcement, which may be
/// the complement of the set she chose; the T part always comes first.
class ReductionProtocol final : public Protocol {
 public:
  ReductionProtocol(DistributionType type, StrategyPtr strategy, Agent first_mover = 0)
      : Protocol(std::move(type), first_mover), strategy_(std::move(strategy)) {
    if (!strategy_) throw InvalidArgument("reduce: null strategy");
  }

  std::string name() const override { return "Reduction[" + strategy_->name() + "]"; }
  const SplittingStrategy& strategy() const { return *strategy_; }
  std::size_t k() const { return strategy_->k(); }

  bool finished(const Run& rho) const override {
    const State st = parse(rho);
    return st.theta_step && rho.size() > *st.theta_step;
  }

  std::optional<std::size_t> finished_length(const Run& rho) const override {
    const State st = parse(rho);
    if (!st.theta_step || rho.size() <= *st.theta_step) return std::nullopt;
    return *st.theta_step + 1;
  }

  std::optional<std::vector<Deal>> certified_diffusion(const Run& rho) const override {
    const State st = parse(rho);
    if (!st.theta_step || rho.size() <= *st.theta_step) return std::nullopt;
    return rho[*st.theta_step].deals();
  }

  /// The parts and sub-protocols fixed by a run that has passed rho1.
  struct Parts {
    Agent splitter = 0;
    CardSet t;
    CardSet r;
    DistributionType type_t;
    DistributionType type_r;
    ProtocolPtr sub_t;
    ProtocolPtr sub_r;
    Run run_t;
    Run run_r;
  };

  std::optional<Parts> parts(const Run& rho) const {
    const State st = parse(rho);
    if (!st.parts) return std::nullopt;
    return *st.parts;
  }

  /// Number of plan nodes on the deepest path below this run, counting
  /// this reduction and the leaf solver.
  std::size_t depth(const Run& rho) const {
    const auto p = parts(rho);
    if (!p) return 1;
    std::size_t d = 1;
    for (const auto& [sub, run] : {std::pair{p->sub_t, p->run_t}, std::pair{p->sub_r, p->run_r}}) {
      if (const auto* red = dynamic_cast<const ReductionProtocol*>(sub.get())) d = std::max(d, red->depth(run));
    }
    return d + 1;
  }

  /// The phase each action of rho belongs to: rho0, rho1, rhoT, rhoR, rho2,
  /// Theta or End.
  std::vector<std::string> phase_labels(const Run& rho) const {
    std::vector<std::string> out;
    Run prefix;
    for (const auto& a : rho) {
      switch (parse(prefix).phase) {
        case Phase::kSplit: out.push_back(a.is_pass() ? "rho0" : "rho1"); break;
        case Phase::kCount: out.push_back("rho1"); break;
        case Phase::kSubT: out.push_back("rhoT"); break;
        case Phase::kSubR: out.push_back("rhoR"); break;
        case Phase::kWait: out.push_back("rho2"); break;
        case Phase::kTheta: out.push_back("Theta"); break;
        case Phase::kDone: out.push_back("End"); break;
      }
      prefix.push_back(a);
    }
    return out;
  }

 protected:
  bool permits_action(const Deal& deal, const Run& rho, const Announcement& a) const override {
    const State st = parse(rho);
    const std::size_t i = rho.size();
    const Agent p = mover(i);
    switch (st.phase) {
      case Phase::kSplit: {
        if (!strategy_->splits(type(), p, deal.hand(p))) return a.is_pass();
        if (a.kind() != AnnouncementKind::kCountsIn || a.agent() != p || !extension_contains(a, deal)) return false;
        return strategy_->allows(type(), p, deal.hand(p), a.cards()) ||
               strategy_->allows(type(), p, deal.hand(p), type().deck() - a.cards());
      }
      case Phase::kCount:
        return a.kind() == AnnouncementKind::kCountsIn && a.agent() == p && on_split(a, st.t) &&
               extension_contains(a, deal);
      case Phase::kSubT:
      case Phase::kSubR: {
        const bool in_t = st.phase == Phase::kSubT;
        const auto& parts = *st.parts;
        const auto inner = unlift(a, in_t ? parts.t : parts.r);
        if (!inner) return false;
        const auto& sub = in_t ? parts.sub_t : parts.sub_r;
        return sub->permits(restrict(deal, in_t ? parts.t : parts.r), in_t ? parts.run_t : parts.run_r, *inner);
      }
      case Phase::kWait:
        return a.is_pass();
      case Phase::kTheta:
        return a.kind() == AnnouncementKind::kDealSet && valid_theta(deal, *st.parts, a.deals());
      case Phase::kDone:
        return false;
    }
    return false;
  }

  Announcement choose_action(const Deal& deal, const Run& rho, Rng& rng) const override {
    const State st = parse(rho);
    const std::size_t i = rho.size();
    const Agent p = mover(i);
    switch (st.phase) {
      case Phase::kSplit: {
        if (!strategy_->splits(type(), p, deal.hand(p))) {
          if (i + 1 >= agents()) throw ProtocolDefect(name() + ": no agent has a splitting set");
          return Announcement::pass();
        }
        const CardSet t = strategy_->choose(type(), p, deal.hand(p), rng);
        return Announcement::counts_in(type(), p, t, deal.hand(p).intersection_size(t));
      }
      case Phase::kCount:
        return Announcement::counts_in(type(), p, st.t, deal.hand(p).intersection_size(st.t));
      case Phase::kSubT:
      case Phase::kSubR: {
        const bool in_t = st.phase == Phase::kSubT;
        const auto& parts = *st.parts;
        const CardSet& part = in_t ? parts.t : parts.r;
        const auto& sub = in_t ? parts.sub_t : parts.sub_r;
        return lift(sub->choose(restrict(deal, part), in_t ? parts.run_t : parts.run_r, rng), part);
      }
      case Phase::kWait:
        return Announcement::pass();
      case Phase::kTheta:
        return Announcement::deal_set(theta(deal, *st.parts, rng));
      case Phase::kDone:
        break;
    }
    return Announcement::end();
  }

  std::optional<std::vector<Announcement>> enumerate_actions(const Deal& deal, const Run& rho,
                                                             std::size_t limit) const override {
    const State st = parse(rho);
    const Agent p = mover(rho.size());
    std::vector<Announcement> out;
    switch (st.phase) {
      case Phase::kSplit: {
        if (!strategy_->splits(type(), p, deal.hand(p))) return std::vector<Announcement>{Announcement::pass()};
        const auto sets = strategy_->enumerate(type(), p, deal.hand(p), limit);
        if (!sets) return std::nullopt;
        for (const CardSet& t : *sets) {
          Announcement a = Announcement::counts_in(type(), p, t, deal.hand(p).intersection_size(t));
          if (std::none_of(out.begin(), out.end(), [&](const Announcement& b) { return b == a; })) {
            out.push_back(std::move(a));
          }
        }
        break;
      }
      case Phase::kCount:
        out.push_back(Announcement::counts_in(type(), p, st.t, deal.hand(p).intersection_size(st.t)));
        break;
      case Phase::kSubT:
      case Phase::kSubR: {
        const bool in_t = st.phase == Phase::kSubT;
        const auto& parts = *st.parts;
        const CardSet& part = in_t ? parts.t : parts.r;
        const auto& sub = in_t ? parts.sub_t : parts.sub_r;
        const auto inner = sub->actions(restrict(deal, part), in_t ? parts.run_t : parts.run_r, limit);
        if (!inner) return std::nullopt;
        for (const auto& b : *inner) out.push_back(lift(b, part));
        break;
      }
      case Phase::kWait:
        out.push_back(Announcement::pass());
        break;
      case Phase::kTheta:
      case Phase::kDone:
        return std::nullopt;
    }
    if (out.size() > limit) return std::nullopt;
    return out;
  }

 private:
  enum class Phase { kSplit, kCount, kSubT, kSubR, kWait, kTheta, kDone };

  struct State {
    Phase phase = Phase::kSplit;
    CardSet t;
    std::optional<Parts> parts;
    std::optional<std::size_t> theta_step;
  };

  static Announcement lift(const Announcement& inner, const CardSet& part) {
    if (inner.is_pass()) return Announcement::pass();
    return Announcement::restricted(part, inner);
  }

  static std::optional<Announcement> unlift(const Announcement& a, const CardSet& part) {
    if (a.is_pass()) return Announcement::pass();
    if (a.kind() == AnnouncementKind::kRestricted && a.cards() == part) return a.inner();
    return std::nullopt;
  }

  bool on_split(const Announcement& a, const CardSet& t) const {
    return a.cards() == t || a.cards() == type().deck() - t;
  }

  std::size_t count_in(const Announcement& a, const CardSet& t) const {
    return a.cards() == t ? a.count() : type().size(a.agent()) - a.count();
  }

  ProtocolPtr cached_sub(const DistributionType& sub, Agent first_mover) const {
    std::string key = format_cards(sub.deck()) + "/" + std::to_string(first_mover);
    for (std::size_t s : sub.sizes()) key += "," + std::to_string(s);
    std::lock_guard lock(cache_mutex_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    ProtocolPtr p = strategy_->sub_protocol(sub, first_mover);
    cache_.emplace(std::move(key), p);
    return p;
  }

  /// Consumes a sub-run starting at `begin`; returns its end, or nullopt
  /// when the run stops before the sub-protocol finishes.
  static std::optional<std::size_t> consume(const Run& rho, std::size_t begin, const ProtocolPtr& sub,
                                            const CardSet& part, Run& out) {
    if (!sub) return begin;
    for (std::size_t i = begin; i < rho.size(); ++i) {
      auto inner = unlift(rho[i], part);
      if (!inner) break;
      out.push_back(std::move(*inner));
    }
    const auto len = sub->finished_length(out);
    if (!len) {
      if (begin + out.size() < rho.size()) {
        throw ProtocolDefect("reduce: announcement outside the sub-protocol at step " +
                             std::to_string(begin + out.size() + 1));
      }
      return std::nullopt;
    }
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(*len), out.end());
    return begin + *len;
  }

  State parse(const Run& rho) const {
    State st;
    const std::size_t m = agents();
    std::size_t i0 = 0;
    while (i0 < rho.size() && rho[i0].is_pass()) ++i0;
    if (i0 >= rho.size()) return st;
    const Announcement& split = rho[i0];
    if (split.kind() != AnnouncementKind::kCountsIn) throw ProtocolDefect("reduce: malformed split announcement");
    st.t = split.cards();
    if (rho.size() < i0 + m) {
      st.phase = Phase::kCount;
      return st;
    }

    Parts parts;
    parts.splitter = split.agent();
    parts.t = st.t;
    parts.r = type().deck() - st.t;
    std::vector<std::size_t> tt(m, 0);
    std::vector<std::size_t> rr(m, 0);
    for (std::size_t j = i0; j < i0 + m; ++j) {
      const Announcement& a = rho[j];
      if (a.kind() != AnnouncementKind::kCountsIn || !on_split(a, st.t)) {
        throw ProtocolDefect("reduce: malformed count announcement at step " + std::to_string(j + 1));
      }
      tt[a.agent()] = count_in(a, st.t);
      rr[a.agent()] = type().size(a.agent()) - tt[a.agent()];
    }
    parts.type_t = DistributionType(tt, parts.t);
    parts.type_r = DistributionType(rr, parts.r);

    const std::size_t t_begin = i0 + m;
    parts.sub_t = cached_sub(parts.type_t, mover(t_begin));
    const auto t_end = consume(rho, t_begin, parts.sub_t, parts.t, parts.run_t);
    if (!t_end) {
      st.phase = Phase::kSubT;
      st.parts = std::move(parts);
      return st;
    }
    parts.sub_r = cached_sub(parts.type_r, mover(*t_end));
    const auto r_end = consume(rho, *t_end, parts.sub_r, parts.r, parts.run_r);
    if (!r_end) {
      st.phase = Phase::kSubR;
      st.parts = std::move(parts);
      return st;
    }

    const Agent start = mover(*r_end);
    std::optional<std::size_t> wait;
    for (std::size_t j = 0; j < m && !wait; ++j) {
      const Agent q = (start + j) % m;
      if (tt[q] > 0 && rr[q] > 0) wait = j;
    }
    if (!wait) throw ProtocolDefect("reduce: no agent holds cards on both sides of the split");
    st.theta_step = *r_end + *wait;
    st.parts = std::move(parts);
    if (rho.size() < *st.theta_step) {
      st.phase = Phase::kWait;
    } else if (rho.size() == *st.theta_step) {
      st.phase = Phase::kTheta;
    } else {
      st.phase = Phase::kDone;
    }
    return st;
  }

  Diffusion part_diffusion(const Deal& sub_deal, const ProtocolPtr& sub, const Run& run, Rng& rng) const {
    if (!sub) return two_agent_diffusion(sub_deal, k(), rng);
    auto d = sub->certified_diffusion(run);
    if (!d) throw ProtocolDefect(name() + ": sub-protocol " + sub->name() + " certified no diffusion");
    return *d;
  }

  Diffusion theta(const Deal& deal, const Parts& parts, Rng& rng) const {
    const Deal ht = restrict(deal, parts.t);
    const Deal hr = restrict(deal, parts.r);
    const Diffusion gamma = part_diffusion(ht, parts.sub_t, parts.run_t, rng);
    const Diffusion delta = part_diffusion(hr, parts.sub_r, parts.run_r, rng);
    if (gamma.size() != k() || delta.size() != k()) throw ProtocolDefect(name() + ": sub-diffusion size differs from k");
    const auto gi = std::find(gamma.begin(), gamma.end(), ht) - gamma.begin();
    const auto di = std::find(delta.begin(), delta.end(), hr) - delta.begin();
    if (static_cast<std::size_t>(gi) == gamma.size() || static_cast<std::size_t>(di) == delta.size()) {
      throw ProtocolDefect(name() + ": sub-diffusion misses the actual deal");
    }
    return fuse(gamma, delta, random_diffusion_spread(k(), static_cast<std::size_t>(gi), static_cast<std::size_t>(di), rng));
  }

  bool valid_part(const std::vector<Deal>& restricted, const ProtocolPtr& sub, const Run& run) const {
    if (!is_k_diffusion(restricted, k())) return false;
    if (!sub) return true;
    if (const auto cert = sub->certified_diffusion(run)) return same_deals(restricted, *cert);
    return std::all_of(restricted.begin(), restricted.end(), [&](const Deal& g) { return is_execution(*sub, g, run); });
  }

  bool valid_theta(const Deal& deal, const Parts& parts, const std::vector<Deal>& deals) const {
    if (deals.size() != k() || std::find(deals.begin(), deals.end(), deal) == deals.end()) return false;
    std::vector<Deal> gt;
    std::vector<Deal> gr;
    for (const Deal& g : deals) {
      if (!g.has_type(type())) return false;
      gt.push_back(restrict(g, parts.t));
      gr.push_back(restrict(g, parts.r));
      if (!gt.back().has_type(parts.type_t) || !gr.back().has_type(parts.type_r)) return false;
    }
    return valid_part(gt, parts.sub_t, parts.run_t) && valid_part(gr, parts.sub_r, parts.run_r);
  }

  StrategyPtr strategy_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::string, ProtocolPtr> cache_;
};

inline ProtocolPtr reduce(const DistributionType& type, StrategyPtr strategy, Agent first_mover = 0) {
  return std::make_shared<const ReductionProtocol>(type, std::move(strategy), first_mover);
}

}  // namespace sadi
