#pragma once

#include <memory>
#include <utility>

#include "sadi/combinat/diffusion.hpp"
#include "sadi/protocol.hpp"

namespace sadi {

/// Two agents holding all the cards already know the deal: the protocol ends
/// at once. Its k-diffusion certificate depends on the deal, so it is
/// produced separately by two_agent_diffusion.
class TwoAgentProtocol final : public Protocol {
 public:
  TwoAgentProtocol(DistributionType type, std::size_t k, Agent first_mover = 0)
      : Protocol(std::move(type), first_mover), k_(k) {
    const auto parts = two_agent_parts(this->type());
    const auto v = two_agent_violation(this->type().size(parts.small), this->type().size(parts.large), k_);
    if (!v.empty()) throw PreconditionError("two-agent protocol with k=" + std::to_string(k_) + ": " + v + " fails");
  }

  std::string name() const override { return "TwoAgent"; }
  std::size_t k() const { return k_; }
  bool finished(const Run& /*rho*/) const override { return true; }

 protected:
  bool permits_action(const Deal&, const Run&, const Announcement&) const override { return false; }
  Announcement choose_action(const Deal&, const Run&, Rng&) const override { return Announcement::end(); }

 private:
  std::size_t k_;
};

/// The empty protocol for a two-agent type together with a k-diffusion that
/// contains `actual`.
inline std::pair<ProtocolPtr, Diffusion> solve_two_agent(const Deal& actual, std::size_t k, std::uint64_t seed) {
  auto protocol = std::make_shared<const TwoAgentProtocol>(actual.type(), k);
  return {protocol, two_agent_diffusion(actual, k, seed)};
}

}  // namespace sadi
