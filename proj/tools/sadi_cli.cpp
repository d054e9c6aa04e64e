#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sadi/protocols/bounds.hpp"
#include "sadi/protocols/classify.hpp"
#include "sadi/protocols/less_big.hpp"
#include "sadi/verifier/verify.hpp"

using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kNoSolver = 2;
constexpr int kUsage = 3;

constexpr const char* kTraceSchema = "sadi-trace/1";
constexpr const char* kReportSchema = "sadi-report/1";
constexpr const char* kPlanSchema = "sadi-plan/1";
constexpr const char* kBoundsSchema = "sadi-bounds/1";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw UsageError("bad distribution type '" + text + "'");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw UsageError("empty distribution type");
  return sizes;
}

/// The type, taking its deck from the deal when one is given.
sadi::DistributionType make_type(const std::vector<std::size_t>& sizes, const std::optional<sadi::Deal>& deal) {
  if (!deal) return sadi::DistributionType(sizes);
  sadi::DistributionType type(sizes, deal->deck());
  if (!deal->has_type(type)) throw UsageError("deal does not match the distribution type");
  return type;
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("SADI_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad SADI_BUDGET '") + env + "'");
    }
  }
  return sadi::kDefaultEnumerationBudget;
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write '" + out + "'");
  f << j.dump(2) << "\n";
}

json plan_json(const sadi::Classification& c) {
  json j = sadi::to_json(c);
  j["schema"] = kPlanSchema;
  return j;
}

int cmd_classify(const std::string& type_text, const std::string& out) {
  const auto c = sadi::classify(sadi::DistributionType(parse_sizes(type_text)));
  emit(plan_json(c), out);
  return c.solvable() ? kPass : kNoSolver;
}

int cmd_solve(const std::string& type_text, const std::string& out) {
  const auto c = sadi::classify(sadi::DistributionType(parse_sizes(type_text)));
  json j = plan_json(c);
  if (c.solvable()) j["protocol"] = sadi::instantiate(*c.plan)->name();
  emit(j, out);
  return c.solvable() ? kPass : kNoSolver;
}

json trace_json(const sadi::SolverPlan& plan, const sadi::Protocol& p, const sadi::Deal& deal, std::uint64_t seed,
                const sadi::Run& run) {
  json j{{"schema", kTraceSchema},
         {"sizes", p.type().sizes()},
         {"deck", sadi::format_cards(p.type().deck())},
         {"plan", sadi::to_json(plan)},
         {"protocol", p.name()},
         {"deal", sadi::format_deal(deal)},
         {"seed", seed},
         {"run", sadi::to_json(run)},
         {"terminal", sadi::is_terminal(run)}};
  if (const auto* red = dynamic_cast<const sadi::ReductionProtocol*>(&p)) j["phases"] = red->phase_labels(run);
  if (const auto theta = p.certified_diffusion(run)) {
    j["certified_diffusion"] = json::array();
    for (const auto& d : *theta) j["certified_diffusion"].push_back(sadi::format_deal(d));
  }
  return j;
}

int cmd_run(const std::string& type_text, const std::string& deal_text, std::uint64_t seed, const std::string& out) {
  std::optional<sadi::Deal> deal;
  if (!deal_text.empty()) deal = sadi::parse_deal(deal_text);
  const auto type = make_type(parse_sizes(type_text), deal);
  const auto c = sadi::classify(type);
  if (!c.solvable()) {
    emit(plan_json(c), out);
    return kNoSolver;
  }
  if (!deal) {
    sadi::Rng rng(seed);
    deal = sadi::detail::sample_deals(type, 1, rng).front();
  }
  const auto p = sadi::instantiate(*c.plan);
  const sadi::Run run = sadi::execute(*p, *deal, seed);
  emit(trace_json(*c.plan, *p, *deal, seed, run), out);
  return kPass;
}

struct VerifyArgs {
  std::string trace;
  std::string type;
  std::string props = "I,S";
  bool exhaustive = false;
  bool witness = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
  std::string out;
};

int report_exit(json report, const std::string& out) {
  report["schema"] = kReportSchema;
  const bool ok = report.at("all_hold").get<bool>();
  emit(report, out);
  return ok ? kPass : kPropertyFailure;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.trace.empty() == a.type.empty()) throw UsageError("give exactly one of --trace and --type");
  if (a.exhaustive && a.witness) throw UsageError("--exhaustive and --witness are exclusive");
  const auto props = sadi::PropertySet::parse(a.props);
  sadi::VerifyOptions opt;
  opt.seed = a.seed;
  opt.budget = a.budget;
  opt.jobs = a.jobs;

  if (!a.trace.empty()) {
    std::ifstream f(a.trace);
    if (!f) throw UsageError("cannot read '" + a.trace + "'");
    json t;
    try {
      t = json::parse(f);
    } catch (const json::exception& e) {
      throw UsageError(std::string("trace is not JSON: ") + e.what());
    }
    if (t.value("schema", "") != kTraceSchema) throw UsageError("not a " + std::string(kTraceSchema) + " document");
    const auto plan = sadi::plan_from_json(t.at("plan"));
    const auto p = sadi::instantiate(plan);
    const auto deal = sadi::parse_deal(t.at("deal").get<std::string>());
    const auto run = sadi::run_from_json(t.at("run"));
    const bool small = sadi::deal_count(p->type()) <= a.budget;
    opt.ignorance = a.witness || (!a.exhaustive && !small) ? sadi::IgnoranceMode::kWitness
                                                           : sadi::IgnoranceMode::kExhaustive;
    auto report = sadi::to_json(sadi::verify_trace(*p, deal, run, props, opt));
    report["seed"] = t.value("seed", std::uint64_t{0});
    return report_exit(report, a.out);
  }

  const auto c = sadi::classify(sadi::DistributionType(parse_sizes(a.type)));
  if (!c.solvable()) {
    emit(plan_json(c), a.out);
    return kNoSolver;
  }
  const auto p = sadi::instantiate(*c.plan);
  if (a.witness) {
    opt.deals = sadi::VerifyOptions::Deals::kSample;
    opt.branches = sadi::VerifyOptions::Branches::kSeeded;
    opt.ignorance = sadi::IgnoranceMode::kWitness;
    opt.samples = a.samples ? a.samples : 100;
  } else if (a.samples) {
    opt.deals = sadi::VerifyOptions::Deals::kSample;
    opt.branches = sadi::VerifyOptions::Branches::kSeeded;
    opt.samples = a.samples;
  }
  json report = sadi::to_json(sadi::verify(*p, props, opt));
  report["plan"] = sadi::to_json(*c.plan);
  return report_exit(report, a.out);
}

json bound_point(std::int64_t a, std::int64_t k, std::int64_t m, std::int64_t n) {
  const auto b = sadi::simple_bound_check(a, k, m, n);
  return {{"a", a},
          {"k", k},
          {"m", m},
          {"n", n},
          {"d", sadi::less_big_d(a, k, n).str()},
          {"bound1", {{"holds", b.bound1_holds}, {"lhs", b.lhs1.str()}, {"rhs", b.rhs1.str()}}},
          {"bound2", {{"holds", b.bound2_holds}, {"lhs", b.lhs2.str()}, {"rhs", b.rhs2.str()}}}};
}

struct BoundsArgs {
  std::vector<std::int64_t> point;
  bool sweep = false;
  std::int64_t m_max = 5;
  std::int64_t k_max = 20;
  std::int64_t n_max = 2000;
  std::string type;
  std::size_t k = 0;
  std::string out;
};

int cmd_bounds(const BoundsArgs& b) {
  json j{{"schema", kBoundsSchema}};
  if (!b.type.empty()) {
    if (b.k == 0) throw UsageError("--type needs --k");
    const sadi::DistributionType type(parse_sizes(b.type));
    const auto alice = sadi::largest_holder(type);
    const auto c = sadi::less_big_conditions(type, b.k, alice);
    j["conditions"] = {{"sizes", type.sizes()},   {"k", b.k},       {"alice", alice},
                       {"d", c.d.str()},          {"k>=4", c.k_at_least_4}, {"alice_share", c.alice_share},
                       {"condition1", c.c1},      {"condition2", c.c2},     {"condition3", c.c3},
                       {"condition4", c.c4},      {"all", c.all()}};
    emit(j, b.out);
    return c.all() ? kPass : kPropertyFailure;
  }
  if (b.sweep) {
    json failures = json::array();
    std::uint64_t points = 0;
    for (std::int64_t m = 2; m <= b.m_max; ++m) {
      for (std::int64_t k = 2 * m + 1; k <= b.k_max; ++k) {
        for (std::int64_t n = k * k; n <= b.n_max; ++n) {
          for (std::int64_t a = (n + m - 1) / m; a < n; ++a) {
            ++points;
            const auto r = sadi::simple_bound_check(a, k, m, n);
            if (!r.bound1_holds || !r.bound2_holds) failures.push_back(bound_point(a, k, m, n));
          }
        }
      }
    }
    j["points"] = points;
    j["failures"] = failures;
    emit(j, b.out);
    return failures.empty() ? kPass : kPropertyFailure;
  }
  if (b.point.size() != 4) throw UsageError("bounds needs a k m n, --sweep, or --type with --k");
  try {
    j["point"] = bound_point(b.point[0], b.point[1], b.point[2], b.point[3]);
  } catch (const sadi::PreconditionError& e) {
    throw UsageError(e.what());
  } catch (const sadi::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  emit(j, b.out);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize and verify secure aggregation protocols for card deals"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--output", out, "Write JSON here instead of stdout");

  std::string type_text;
  auto* classify = app.add_subcommand("classify", "Pick a solver for a distribution type");
  classify->add_option("type", type_text, "Hand sizes, e.g. 2,3,4")->required();

  auto* solve = app.add_subcommand("solve", "Classify and build the protocol");
  solve->add_option("type", type_text, "Hand sizes")->required();

  std::string deal_text;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Execute the synthesized protocol and print the trace");
  run->add_option("type", type_text, "Hand sizes")->required();
  run->add_option("--deal", deal_text, "Deal, e.g. \"1,2|3,4,5|6,7,8,9\"; random from the seed if omitted");
  run->add_option("--seed", seed, "Seed for the deal and the protocol's choices");

  VerifyArgs va;
  va.budget = 0;
  va.jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* verify = app.add_subcommand("verify", "Check properties of a trace or of a synthesized protocol");
  verify->add_option("--trace", va.trace, "Trace written by 'run'");
  verify->add_option("--type", va.type, "Hand sizes");
  verify->add_option("--props", va.props, "Comma-separated: WI,I,DS,S,SS,S_P<agent>,k=<n>");
  verify->add_flag("--exhaustive", va.exhaustive, "All deals, all branches, exact ignorance sets");
  verify->add_flag("--witness", va.witness, "Sampled deals, ignorance sets by replaying the announced deals");
  verify->add_option("--sample", va.samples, "Number of sampled deals");
  verify->add_option("--seed", va.seed, "Seed for sampling");
  verify->add_option("--budget", va.budget, "Largest deal space to enumerate (default: $SADI_BUDGET or 10^7)");
  verify->add_option("--jobs", va.jobs, "Worker threads");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the less-big inequalities exactly");
  bounds->add_option("point", ba.point, "a k m n");
  bounds->add_flag("--sweep", ba.sweep, "Check every grid point of the region 2m < k, k^2 <= n, n/m <= a < n");
  bounds->add_option("--m-max", ba.m_max);
  bounds->add_option("--k-max", ba.k_max);
  bounds->add_option("--n-max", ba.n_max);
  bounds->add_option("--type", ba.type, "Report conditions 1-4 for this type");
  bounds->add_option("--k", ba.k);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*classify) return cmd_classify(type_text, out);
    if (*solve) return cmd_solve(type_text, out);
    if (*run) return cmd_run(type_text, deal_text, seed, out);
    if (*verify) {
      va.out = out;
      if (va.budget == 0) va.budget = default_budget();
      return cmd_verify(va);
    }
    if (*bounds) {
      ba.out = out;
      return cmd_bounds(ba);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const sadi::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const sadi::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const sadi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPropertyFailure;
  }
  return kUsage;
}
