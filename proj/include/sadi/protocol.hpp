#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sadi/announcement.hpp"
#include "sadi/cards.hpp"
#include "sadi/errors.hpp"
#include "sadi/rng.hpp"

namespace sadi {

using Run = std::vector<Announcement>;

/// Agent whose turn it is at the given 1-based step, for m agents taking
/// turns from agent 0.
inline Agent turn_agent(std::size_t step_index, std::size_t m) {
  if (step_index < 1 || m < 1) throw InvalidArgument("turn_agent: step index and agent count must be positive");
  return (step_index - 1) % m;
}

inline bool is_terminal(const Run& run) { return !run.empty() && run.back().is_end(); }

/// Run-length guard: 4m + 2|Deck| actions.
inline std::size_t default_max_run_length(const DistributionType& type) {
  return 4 * type.agents() + 2 * type.total();
}

/// A nondeterministic strategy: for a deal H and a non-terminal proper run
/// rho it defines the non-empty action set pi(H, rho).
///
/// The set is given by a membership test (`permits`) plus a sampler
/// (`choose`) that draws one member, and optionally an exhaustive listing
/// (`actions`) where the set is small enough. All three are only consulted
/// on executions: (H, rho) must itself be an execution of the protocol.
///
/// Agents take turns cyclically starting at `first_mover`. Top-level
/// protocols start at agent 0; protocols embedded in a reduction start
/// wherever the enclosing run happens to be.
///
/// Whether a run is finished (the next action is End) depends on the run
/// alone, never on the deal.
class Protocol {
 public:
  explicit Protocol(DistributionType type, Agent first_mover = 0)
      : type_(std::move(type)), first_mover_(first_mover % std::max<std::size_t>(1, type_.agents())) {}
  virtual ~Protocol() = default;

  const DistributionType& type() const { return type_; }
  std::size_t agents() const { return type_.agents(); }
  Agent first_mover() const { return first_mover_; }
  Agent mover(std::size_t run_length) const { return (first_mover_ + run_length) % type_.agents(); }

  virtual std::string name() const = 0;

  /// True when the next (and only) action is End.
  virtual bool finished(const Run& rho) const = 0;

  /// Length of the shortest prefix of rho that is finished, if any.
  virtual std::optional<std::size_t> finished_length(const Run& rho) const {
    Run prefix;
    prefix.reserve(rho.size());
    for (std::size_t i = 0;; ++i) {
      if (finished(prefix)) return i;
      if (i == rho.size()) return std::nullopt;
      prefix.push_back(rho[i]);
    }
  }

  bool permits(const Deal& deal, const Run& rho, const Announcement& a) const {
    if (a.is_end()) return finished(rho);
    if (finished(rho)) return false;
    return permits_action(deal, rho, a);
  }

  Announcement choose(const Deal& deal, const Run& rho, Rng& rng) const {
    if (finished(rho)) return Announcement::end();
    return choose_action(deal, rho, rng);
  }

  /// Every member of pi(H, rho), or nullopt when the set is larger than
  /// `limit` or the protocol cannot list it.
  std::optional<std::vector<Announcement>> actions(const Deal& deal, const Run& rho, std::size_t limit) const {
    if (finished(rho)) return std::vector<Announcement>{Announcement::end()};
    return enumerate_actions(deal, rho, limit);
  }

  /// For a finished run, a k-diffusion contained in the ignorance set that
  /// the protocol itself announced, when it announced one.
  virtual std::optional<std::vector<Deal>> certified_diffusion(const Run& /*rho*/) const { return std::nullopt; }

 protected:
  virtual bool permits_action(const Deal& deal, const Run& rho, const Announcement& a) const = 0;
  virtual Announcement choose_action(const Deal& deal, const Run& rho, Rng& rng) const = 0;
  virtual std::optional<std::vector<Announcement>> enumerate_actions(const Deal& /*deal*/, const Run& /*rho*/,
                                                                     std::size_t /*limit*/) const {
    return std::nullopt;
  }

  bool passive(Agent p) const { return type_.size(p) == 0; }

 private:
  DistributionType type_;
  Agent first_mover_;
};

using ProtocolPtr = std::shared_ptr<const Protocol>;

/// Runs the protocol on `deal`, drawing every random choice from one
/// generator seeded with `seed`. Throws ProtocolDefect when a drawn action
/// does not contain the deal or the run exceeds `max_length`.
inline Run execute(const Protocol& protocol, const Deal& deal, std::uint64_t seed,
                   std::optional<std::size_t> max_length = std::nullopt) {
  if (!deal.has_type(protocol.type())) throw InvalidArgument("execute: deal does not match the protocol's type");
  const std::size_t guard = max_length.value_or(default_max_run_length(protocol.type()));
  Rng rng(seed);
  Run run;
  while (true) {
    if (run.size() >= guard) {
      throw ProtocolDefect(protocol.name() + ": run exceeded the length guard of " + std::to_string(guard));
    }
    Announcement a = protocol.choose(deal, run, rng);
    if (!a.is_end() && !extension_contains(a, deal)) {
      throw ProtocolDefect(protocol.name() + ": chose an announcement not containing the actual deal at step " +
                           std::to_string(run.size() + 1));
    }
    const bool end = a.is_end();
    run.push_back(std::move(a));
    if (end) return run;
  }
}

/// True iff every action of `run` is in pi(deal, prefix).
inline bool is_execution(const Protocol& protocol, const Deal& deal, const Run& run) {
  if (!deal.has_type(protocol.type())) return false;
  Run prefix;
  prefix.reserve(run.size());
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (i > 0 && run[i - 1].is_end()) return false;
    if (!protocol.permits(deal, prefix, run[i])) return false;
    prefix.push_back(run[i]);
  }
  return true;
}

}  // namespace sadi
