// Command-line surface over the sandpile library.
//
// Exit codes are a contract:
//   0  success / affirmative verdict
//   2  invalid input
//   3  negative verdict (Unsuccessful) or recurrent dynamics
//   4  classifier disagreement (a falsification event)
//   5  state budget exhausted
//
// Machine output (json/csv) goes to stdout, diagnostics to stderr.
// SANDPILE_BUDGET overrides the default state budget of 1,000,000.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sandpile/core.hpp"
#include "sandpile/dynamics.hpp"
#include "sandpile/enumeration.hpp"
#include "sandpile/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sandpile;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNegative = 3;
constexpr int kExitFalsified = 4;
constexpr int kExitBudget = 5;

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  return Format::Csv;  // CLI11 restricts the choices
}

long long env_or_default_budget() {
  const char* raw = std::getenv("SANDPILE_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultStateBudget;
  long long value = 0;
  const char* end = raw + std::string_view(raw).size();
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value < 1) {
    throw std::invalid_argument(std::string("SANDPILE_BUDGET must be a positive integer, got '") +
                                raw + "'");
  }
  return value;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string join_ints(const std::vector<int>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_longs(const std::vector<long long>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

// Configurations contain commas, so the config column is always quoted.
std::string csv_quote(const std::string& field) { return "\"" + field + "\""; }

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string config_text;
  std::string policy = "lowest";
  long long max_steps = 1000;
  std::string format = "text";
};

ordered_json outcome_to_json(const StabilizationOutcome& outcome) {
  ordered_json j;
  if (outcome.kind == OutcomeKind::Terminated) {
    j["kind"] = "Terminated";
    j["final"] = to_string(*outcome.final_config);
    j["firings_total"] = outcome.firings_total;
    j["odometer"] = outcome.odometer;
  } else {
    j["kind"] = "Recurrent";
    j["firings_total"] = outcome.firings_total;
    j["steps_to_cycle"] = outcome.steps_to_cycle;
    j["cycle_length"] = outcome.cycle_length;
  }
  return j;
}

int run_simulate(const SimulateOptions& opt) {
  const CycleConfig config = parse_config(opt.config_text);
  const FiringPolicy policy = parse_policy(opt.policy);
  const long long budget = env_or_default_budget();
  const StabilizationOutcome outcome = stabilize(config, policy, budget);
  const std::vector<TraceEntry> entries = trace(config, policy, opt.max_steps);

  switch (parse_format(opt.format)) {
    case Format::Text:
      for (std::size_t i = 0; i < entries.size(); ++i) {
        std::cout << "step#" << i << "\tfired={" << join_ints(entries[i].fired, ',')
                  << "}\tstate=" << to_string(entries[i].state) << "\n";
      }
      if (outcome.kind == OutcomeKind::Terminated) {
        std::cout << "kind=Terminated\n"
                  << "final=" << to_string(*outcome.final_config) << "\n"
                  << "firings_total=" << outcome.firings_total << "\n"
                  << "odometer=" << join_longs(outcome.odometer, ',') << "\n";
      } else {
        std::cout << "kind=Recurrent\n"
                  << "firings_total=" << outcome.firings_total << "\n"
                  << "steps_to_cycle=" << outcome.steps_to_cycle << "\n"
                  << "cycle_length=" << outcome.cycle_length << "\n";
      }
      break;
    case Format::Json: {
      ordered_json j;
      j["config"] = to_string(config);
      j["policy"] = std::string(policy_name(policy));
      ordered_json steps = ordered_json::array();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        steps.push_back({{"step", i},
                         {"fired", entries[i].fired},
                         {"state", to_string(entries[i].state)}});
      }
      j["trace"] = std::move(steps);
      j["outcome"] = outcome_to_json(outcome);
      print_json(j);
      break;
    }
    case Format::Csv:
      std::cout << "step,fired,state\n";
      for (std::size_t i = 0; i < entries.size(); ++i) {
        std::cout << i << "," << join_ints(entries[i].fired, ';') << ","
                  << csv_quote(to_string(entries[i].state)) << "\n";
      }
      break;
  }
  return outcome.kind == OutcomeKind::Terminated ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyOptions {
  std::string config_text;
  std::string method = "both";
  std::string format = "text";
};

int run_classify(const ClassifyOptions& opt) {
  const CycleConfig config = parse_config(opt.config_text);
  const long long budget = env_or_default_budget();

  std::optional<Classification> by_invariant;
  std::optional<Classification> by_simulation;
  if (opt.method == "invariant" || opt.method == "both") {
    by_invariant = classify_by_invariant(config);
  }
  if (opt.method == "simulation" || opt.method == "both") {
    by_simulation = classify_by_simulation(config, FiringPolicy::LowestIndex, budget);
  }

  const Classification& evidence = by_invariant ? *by_invariant : *by_simulation;
  bool disagree = false;
  Verdict overall = evidence.verdict;
  if (by_invariant && by_simulation) {
    disagree = by_invariant->verdict != by_simulation->verdict;
    overall = by_simulation->verdict;  // dynamics are the ground truth
  }
  const std::string overall_text =
      disagree ? "Mismatch" : std::string(verdict_name(overall));

  switch (parse_format(opt.format)) {
    case Format::Text:
      std::cout << "config=" << to_string(config) << "\n"
                << "n=" << config.n() << "\n"
                << "config_invariant=" << evidence.config_invariant.value << "\n"
                << "target_invariant=" << evidence.target_invariant.value << "\n";
      if (by_invariant) {
        std::cout << "invariant: " << verdict_name(by_invariant->verdict) << "\n";
      }
      if (by_simulation) {
        std::cout << "simulation: " << verdict_name(by_simulation->verdict);
        if (by_simulation->firings) std::cout << " firings_total=" << *by_simulation->firings;
        std::cout << "\n";
      }
      std::cout << "verdict=" << overall_text << "\n";
      break;
    case Format::Json: {
      ordered_json j;
      j["config"] = to_string(config);
      j["n"] = config.n();
      j["config_invariant"] = evidence.config_invariant.value;
      j["target_invariant"] = evidence.target_invariant.value;
      ordered_json methods = ordered_json::object();
      if (by_invariant) {
        methods["invariant"] = {{"verdict", std::string(verdict_name(by_invariant->verdict))}};
      }
      if (by_simulation) {
        ordered_json m{{"verdict", std::string(verdict_name(by_simulation->verdict))}};
        if (by_simulation->firings) m["firings_total"] = *by_simulation->firings;
        methods["simulation"] = std::move(m);
      }
      j["methods"] = std::move(methods);
      j["verdict"] = overall_text;
      print_json(j);
      break;
    }
    case Format::Csv: {
      std::cout << "config,method,verdict,config_invariant,target_invariant,firings_total\n";
      const std::string quoted = csv_quote(to_string(config));
      if (by_invariant) {
        std::cout << quoted << ",invariant," << verdict_name(by_invariant->verdict) << ","
                  << by_invariant->config_invariant.value << ","
                  << by_invariant->target_invariant.value << ",\n";
      }
      if (by_simulation) {
        std::cout << quoted << ",simulation," << verdict_name(by_simulation->verdict) << ","
                  << by_simulation->config_invariant.value << ","
                  << by_simulation->target_invariant.value << ",";
        if (by_simulation->firings) std::cout << *by_simulation->firings;
        std::cout << "\n";
      }
      break;
    }
  }
  if (disagree) return kExitFalsified;
  return overall == Verdict::Successful ? kExitOk : kExitNegative;
}

// ---------------------------------------------------------------------------
// enumerate

struct EnumerateOptions {
  int n = 0;
  bool successful_only = false;
  bool depths = false;
  bool classes = false;
  std::string format = "text";
  std::string out_path;
};

int run_enumerate(const EnumerateOptions& opt, std::ostream& os) {
  const Format format = parse_format(opt.format);
  if (opt.classes && format == Format::Csv) {
    throw std::invalid_argument("--classes has no csv rendering; use text or json");
  }

  const CompositionSpace space = weak_compositions(opt.n, opt.n);
  // The reverse-BFS set backs the successful-only listing and the csv depth
  // column; the plain text/json dump of all compositions does not need it.
  std::optional<SuccessfulSet> successful;
  if (opt.successful_only || format == Format::Csv) {
    successful = reverse_bfs_successful(opt.n);
  }

  if (opt.classes) {
    std::vector<CycleConfig> members;
    members.reserve(successful->size());
    for (const auto& [config, depth] : successful->depth) members.push_back(config);
    const std::vector<RotationClass> classes = cyclic_classes(members);
    if (format == Format::Text) {
      for (const RotationClass& cls : classes) {
        os << "class=" << to_string(cls.representative) << " size=" << cls.members.size();
        if (opt.depths) os << " depth=" << successful->depth.at(cls.representative);
        os << " members=";
        for (std::size_t i = 0; i < cls.members.size(); ++i) {
          if (i > 0) os << ';';
          os << to_string(cls.members[i]);
        }
        os << "\n";
      }
    } else {
      ordered_json j = ordered_json::array();
      for (const RotationClass& cls : classes) {
        ordered_json entry;
        entry["representative"] = to_string(cls.representative);
        entry["size"] = cls.members.size();
        entry["depth"] = successful->depth.at(cls.representative);
        ordered_json names = ordered_json::array();
        for (const CycleConfig& m : cls.members) names.push_back(to_string(m));
        entry["members"] = std::move(names);
        j.push_back(std::move(entry));
      }
      os << j.dump(2) << "\n";
    }
    return kExitOk;
  }

  if (format == Format::Csv) os << "config,invariant,depth\n";
  ordered_json j = ordered_json::array();
  for (const CycleConfig& c : space) {
    const bool member = successful && successful->contains(c);
    if (opt.successful_only && !member) continue;
    switch (format) {
      case Format::Text:
        os << to_string(c);
        if (!opt.successful_only) os << " invariant=" << invariant(c).value;
        if (opt.depths) os << " depth=" << successful->depth.at(c);
        os << "\n";
        break;
      case Format::Json: {
        ordered_json entry;
        entry["config"] = to_string(c);
        entry["invariant"] = invariant(c).value;
        if (opt.successful_only) entry["depth"] = successful->depth.at(c);
        j.push_back(std::move(entry));
        break;
      }
      case Format::Csv:
        os << csv_quote(to_string(c)) << "," << invariant(c).value << ",";
        if (member) os << successful->depth.at(c);
        os << "\n";
        break;
    }
  }
  if (format == Format::Json) os << j.dump(2) << "\n";
  return kExitOk;
}

int run_enumerate(const EnumerateOptions& opt) {
  if (!opt.out_path.empty()) {
    std::ofstream file(opt.out_path);
    if (!file) throw std::invalid_argument("cannot open output file '" + opt.out_path + "'");
    return run_enumerate(opt, file);
  }
  return run_enumerate(opt, std::cout);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  int n_min = 0;
  int n_max = 0;
  std::string policy = "lowest";
  long long budget = 0;  // 0: fall back to SANDPILE_BUDGET or the default
  std::string format = "text";
};

int run_verify(const VerifyOptions& opt) {
  if (opt.n_min < 3 || opt.n_max < opt.n_min) {
    throw std::invalid_argument("bad range: need 3 <= n-min <= n-max, got " +
                                std::to_string(opt.n_min) + ".." + std::to_string(opt.n_max));
  }
  const FiringPolicy policy = parse_policy(opt.policy);
  const long long budget = opt.budget > 0 ? opt.budget : env_or_default_budget();

  bool falsified = false;
  const Format format = parse_format(opt.format);
  ordered_json all = ordered_json::array();
  if (format == Format::Csv) std::cout << "n,residue,count\n";
  for (int n = opt.n_min; n <= opt.n_max; ++n) {
    const VerificationReport report = cross_check(n, policy, budget);
    falsified = falsified || !report.mismatches.empty();
    switch (format) {
      case Format::Text: {
        std::cout << "n=" << report.n << " total_configs=" << report.total_configs
                  << " successful_count=" << report.successful_count << " histogram=";
        bool first = true;
        for (const auto& [residue, count] : report.residue_histogram) {
          if (!first) std::cout << ",";
          std::cout << residue << ":" << count;
          first = false;
        }
        std::cout << " mismatches=" << report.mismatches.size()
                  << " elapsed_ms=" << report.elapsed_ms << "\n";
        for (const Mismatch& m : report.mismatches) {
          std::cout << "  mismatch config=" << to_string(m.config)
                    << " invariant=" << (m.invariant_successful ? "Successful" : "Unsuccessful")
                    << " simulation=" << (m.simulation_successful ? "Successful" : "Unsuccessful")
                    << " reverse_bfs_member=" << (m.reverse_bfs_member ? "true" : "false") << "\n";
        }
        break;
      }
      case Format::Json:
        all.push_back(to_json(report));
        break;
      case Format::Csv:
        for (const auto& [residue, count] : report.residue_histogram) {
          std::cout << report.n << "," << residue << "," << count << "\n";
        }
        break;
    }
  }
  if (format == Format::Json) print_json(all);
  return falsified ? kExitFalsified : kExitOk;
}

// ---------------------------------------------------------------------------
// histogram

struct HistogramOptions {
  int n = 0;
  int k = 0;
  std::string format = "text";
};

int run_histogram(const HistogramOptions& opt) {
  const std::map<int, std::uint64_t> histogram = residue_histogram(opt.n, opt.k);
  switch (parse_format(opt.format)) {
    case Format::Text: {
      bool first = true;
      for (const auto& [residue, count] : histogram) {
        if (!first) std::cout << " ";
        std::cout << residue << ":" << count;
        first = false;
      }
      std::cout << "\n";
      if (opt.k == opt.n) {
        std::cout << "terminal residue " << terminal_invariant(opt.n).value << "\n";
      }
      break;
    }
    case Format::Json: {
      ordered_json j;
      j["n"] = opt.n;
      j["k"] = opt.k;
      ordered_json h = ordered_json::object();
      for (const auto& [residue, count] : histogram) h[std::to_string(residue)] = count;
      j["residue_histogram"] = std::move(h);
      if (opt.k == opt.n) j["terminal_residue"] = terminal_invariant(opt.n).value;
      print_json(j);
      break;
    }
    case Format::Csv:
      std::cout << "residue,count\n";
      for (const auto& [residue, count] : histogram) {
        std::cout << residue << "," << count << "\n";
      }
      break;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chip-firing dynamics, enumeration, and exhaustive verification on a cycle"};
  app.require_subcommand(1);
  const auto format_check = CLI::IsMember({"text", "json", "csv"});
  const auto policy_check = CLI::IsMember({"lowest", "highest", "parallel"});

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "fire a configuration until stable or provably recurrent");
  simulate->add_option("config", sim.config_text, "comma-separated counts, e.g. 0,3,0,1")
      ->required();
  simulate->add_option("--policy", sim.policy, "firing order")->check(policy_check);
  simulate->add_option("--max-steps", sim.max_steps, "trace length cap (default 1000)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--format", sim.format, "text, json, or csv")->check(format_check);

  ClassifyOptions cls;
  CLI::App* classify =
      app.add_subcommand("classify", "successful/unsuccessful verdict for a k = N configuration");
  classify->add_option("config", cls.config_text, "comma-separated counts")->required();
  classify->add_option("--method", cls.method, "invariant, simulation, or both (default)")
      ->check(CLI::IsMember({"invariant", "simulation", "both"}));
  classify->add_option("--format", cls.format, "text, json, or csv")->check(format_check);

  EnumerateOptions enu;
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "list weak compositions of n chips on n vertices");
  enumerate->add_option("n", enu.n, "cycle size")->required();
  CLI::Option* only =
      enumerate->add_flag("--successful-only", enu.successful_only,
                          "restrict to the reverse-fired closure of the terminal set");
  enumerate->add_flag("--depths", enu.depths, "annotate members with reverse-BFS depth")
      ->needs(only);
  enumerate->add_flag("--classes", enu.classes, "group members into rotation classes")
      ->needs(only);
  enumerate->add_option("--format", enu.format, "text, json, or csv")->check(format_check);
  enumerate->add_option("--out", enu.out_path, "write the listing to a file instead of stdout");

  VerifyOptions ver;
  CLI::App* verify = app.add_subcommand(
      "verify", "exhaustive three-way cross-check (invariant / simulation / reverse BFS)");
  verify->add_option("--n-min", ver.n_min, "smallest cycle size")->required();
  verify->add_option("--n-max", ver.n_max, "largest cycle size")->required();
  verify->add_option("--policy", ver.policy, "firing order")->check(policy_check);
  verify->add_option("--budget", ver.budget, "distinct-state budget per stabilization")
      ->check(CLI::PositiveNumber);
  verify->add_option("--format", ver.format, "text, json, or csv")->check(format_check);

  HistogramOptions his;
  CLI::App* histogram =
      app.add_subcommand("histogram", "residue histogram over weak compositions of k on n vertices");
  histogram->add_option("n", his.n, "cycle size")->required();
  histogram->add_option("k", his.k, "chip total")->required();
  histogram->add_option("--format", his.format, "text, json, or csv")->check(format_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (classify->parsed()) return run_classify(cls);
    if (enumerate->parsed()) return run_enumerate(enu);
    if (verify->parsed()) return run_verify(ver);
    if (histogram->parsed()) return run_histogram(his);
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
