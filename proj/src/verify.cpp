#include "sandpile/verify.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "sandpile/enumeration.hpp"

namespace sandpile {

namespace {

void require_critical(const CycleConfig& c) {
  const long long k = total_chips(c);
  if (k != c.n()) {
    throw std::invalid_argument("k != N: configuration " + to_string(c) + " has " +
                                std::to_string(k) + " chips on " + std::to_string(c.n()) +
                                " vertices; the classifier is only defined for k = N");
  }
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  return v == Verdict::Successful ? "Successful" : "Unsuccessful";
}

Classification classify_by_invariant(const CycleConfig& c) {
  require_critical(c);
  Classification cls;
  cls.method = Method::Invariant;
  cls.config_invariant = invariant(c);
  cls.target_invariant = terminal_invariant(c.n());
  cls.verdict =
      cls.config_invariant == cls.target_invariant ? Verdict::Successful : Verdict::Unsuccessful;
  return cls;
}

Classification classify_by_simulation(const CycleConfig& c, FiringPolicy policy,
                                      long long state_budget) {
  require_critical(c);
  Classification cls;
  cls.method = Method::Simulation;
  cls.config_invariant = invariant(c);
  cls.target_invariant = terminal_invariant(c.n());
  StabilizationOutcome outcome = stabilize(c, policy, state_budget);
  if (outcome.kind == OutcomeKind::Terminated) {
    cls.verdict = Verdict::Successful;
    cls.firings = outcome.firings_total;
  } else {
    cls.verdict = Verdict::Unsuccessful;
  }
  return cls;
}

VerificationReport cross_check(int n, FiringPolicy policy, long long state_budget) {
  const auto start = std::chrono::steady_clock::now();
  const SuccessfulSet successful = reverse_bfs_successful(n);
  const Residue target = terminal_invariant(n);

  VerificationReport report;
  report.n = n;
  for (const CycleConfig& c : weak_compositions(n, n)) {
    ++report.total_configs;
    const Residue residue = invariant(c);
    ++report.residue_histogram[residue.value];
    const bool by_invariant = residue == target;
    const bool by_simulation =
        stabilize(c, policy, state_budget).kind == OutcomeKind::Terminated;
    const bool by_reverse_bfs = successful.contains(c);
    if (by_simulation) ++report.successful_count;
    if (by_invariant != by_simulation || by_simulation != by_reverse_bfs) {
      report.mismatches.push_back({c, by_invariant, by_simulation, by_reverse_bfs});
    }
  }
  if (report.total_configs != weak_compositions(n, n).count()) {
    throw std::logic_error("composition stream cardinality diverged from the binomial count");
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Mismatch& a, const Mismatch& b) {
              return to_string(a.config) < to_string(b.config);
            });
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

std::map<int, std::uint64_t> residue_histogram(int n, int k) {
  std::map<int, std::uint64_t> histogram;
  for (const CycleConfig& c : weak_compositions(k, n)) ++histogram[invariant(c).value];
  return histogram;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["total_configs"] = report.total_configs;
  nlohmann::ordered_json histogram = nlohmann::ordered_json::object();
  for (const auto& [residue, count] : report.residue_histogram) {
    histogram[std::to_string(residue)] = count;
  }
  j["residue_histogram"] = std::move(histogram);
  j["successful_count"] = report.successful_count;
  nlohmann::ordered_json mismatches = nlohmann::ordered_json::array();
  for (const Mismatch& m : report.mismatches) {
    mismatches.push_back({{"config", to_string(m.config)},
                          {"invariant_verdict", m.invariant_successful ? "Successful" : "Unsuccessful"},
                          {"simulation_verdict", m.simulation_successful ? "Successful" : "Unsuccessful"},
                          {"reverse_bfs_member", m.reverse_bfs_member}});
  }
  j["mismatches"] = std::move(mismatches);
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

}  // namespace sandpile
