#include <map>
#include <stdexcept>

#include "doctest.h"
#include "sandpile/enumeration.hpp"
#include "sandpile/verify.hpp"

using namespace sandpile;

TEST_CASE("verdict names") {
  CHECK(verdict_name(Verdict::Successful) == "Successful");
  CHECK(verdict_name(Verdict::Unsuccessful) == "Unsuccessful");
}

TEST_CASE("invariant classifier on worked examples") {
  const Classification big = classify_by_invariant(make_config({0, 3, 0, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(big.verdict == Verdict::Successful);
  CHECK(big.config_invariant.value == 5);
  CHECK(big.target_invariant.value == 5);
  CHECK(big.method == Method::Invariant);
  CHECK_FALSE(big.firings.has_value());

  const Classification bad = classify_by_invariant(make_config({2, 1, 0}));
  CHECK(bad.verdict == Verdict::Unsuccessful);
  CHECK(bad.config_invariant.value == 1);
  CHECK(bad.target_invariant.value == 0);

  CHECK(classify_by_invariant(make_config({1, 1, 1})).verdict == Verdict::Successful);
  CHECK(classify_by_invariant(make_config({3, 0, 0})).verdict == Verdict::Successful);
  CHECK(classify_by_invariant(make_config({0, 1, 2})).verdict == Verdict::Unsuccessful);
}

TEST_CASE("classifiers reject off-critical chip totals") {
  CHECK_THROWS_AS(classify_by_invariant(make_config({1, 1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(classify_by_invariant(make_config({4, 1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(classify_by_simulation(make_config({2, 2, 2, 2})), std::invalid_argument);
}

TEST_CASE("simulation classifier records firing effort") {
  const Classification ok = classify_by_simulation(make_config({0, 2, 2, 0}));
  CHECK(ok.verdict == Verdict::Successful);
  CHECK(ok.method == Method::Simulation);
  REQUIRE(ok.firings.has_value());
  CHECK(*ok.firings == 2);
  CHECK(ok.config_invariant.value == 2);
  CHECK(ok.target_invariant.value == 2);

  const Classification trivial = classify_by_simulation(make_config({1, 1, 1}));
  CHECK(trivial.verdict == Verdict::Successful);
  CHECK(*trivial.firings == 0);

  const Classification orbit = classify_by_simulation(make_config({2, 1, 0}));
  CHECK(orbit.verdict == Verdict::Unsuccessful);
  CHECK_FALSE(orbit.firings.has_value());
}

TEST_CASE("cross-check report for n=3") {
  const VerificationReport report = cross_check(3);
  CHECK(report.n == 3);
  CHECK(report.total_configs == 10);
  CHECK(report.successful_count == 4);
  CHECK(report.residue_histogram ==
        std::map<int, std::uint64_t>{{0, 4}, {1, 3}, {2, 3}});
  CHECK(report.mismatches.empty());
}

TEST_CASE("cross-check report for n=4") {
  const VerificationReport report = cross_check(4);
  CHECK(report.total_configs == 35);
  CHECK(report.successful_count == 9);
  CHECK(report.residue_histogram ==
        std::map<int, std::uint64_t>{{0, 10}, {1, 8}, {2, 9}, {3, 8}});
  CHECK(report.mismatches.empty());
}

TEST_CASE("three classifiers agree for every critical pile up to n=6") {
  for (int n = 3; n <= 6; ++n) {
    const VerificationReport report = cross_check(n);
    CHECK(report.mismatches.empty());
    CHECK(report.total_configs ==
          binomial(static_cast<std::uint64_t>(2 * n - 1), static_cast<std::uint64_t>(n - 1)));
    // with zero mismatches the simulation count is exactly the terminal-residue bin
    CHECK(report.successful_count == report.residue_histogram.at(terminal_invariant(n).value));
  }
}

TEST_CASE("residue histograms") {
  CHECK(residue_histogram(3, 3) == std::map<int, std::uint64_t>{{0, 4}, {1, 3}, {2, 3}});
  CHECK(residue_histogram(4, 0) == std::map<int, std::uint64_t>{{0, 1}});
  CHECK(residue_histogram(4, 4) ==
        std::map<int, std::uint64_t>{{0, 10}, {1, 8}, {2, 9}, {3, 8}});
  for (auto [n, k] : {std::pair{5, 5}, std::pair{6, 4}, std::pair{7, 9}}) {
    std::uint64_t total = 0;
    for (const auto& [residue, count] : residue_histogram(n, k)) {
      CHECK(residue >= 0);
      CHECK(residue < n);
      total += count;
    }
    CHECK(total == binomial(static_cast<std::uint64_t>(k + n - 1),
                            static_cast<std::uint64_t>(n - 1)));
  }
}

TEST_CASE("verdicts are rotation and reflection invariant on the critical line") {
  for (int n = 3; n <= 5; ++n) {
    for (const CycleConfig& c : weak_compositions(n, n)) {
      const Verdict base = classify_by_invariant(c).verdict;
      CHECK(classify_by_simulation(c).verdict == base);
      for (int shift = 0; shift < n; ++shift) {
        CHECK(classify_by_invariant(rotate(c, shift)).verdict == base);
      }
      CHECK(classify_by_invariant(reflect(c)).verdict == base);
      CHECK(classify_by_simulation(reflect(c)).verdict == base);
    }
  }
}

TEST_CASE("report serialization is stable and round-trips byte for byte") {
  VerificationReport report = cross_check(3);
  report.elapsed_ms = 7;  // pin the only timing-dependent field
  const nlohmann::ordered_json j = to_json(report);

  const std::vector<std::string> expected_keys = {
      "n", "total_configs", "residue_histogram", "successful_count", "mismatches", "elapsed_ms"};
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == expected_keys);

  CHECK(j["n"] == 3);
  CHECK(j["total_configs"] == 10);
  CHECK(j["residue_histogram"]["0"] == 4);
  CHECK(j["successful_count"] == 4);
  CHECK(j["mismatches"].is_array());
  CHECK(j["mismatches"].empty());
  CHECK(j["elapsed_ms"] == 7);

  const std::string text = j.dump(2);
  CHECK(nlohmann::ordered_json::parse(text).dump(2) == text);
}

TEST_CASE("mismatch entries serialize their verdict trio") {
  VerificationReport report;
  report.n = 3;
  report.total_configs = 10;
  report.mismatches.push_back({make_config({2, 1, 0}), false, true, false});
  const nlohmann::ordered_json j = to_json(report);
  REQUIRE(j["mismatches"].size() == 1);
  CHECK(j["mismatches"][0]["config"] == "2,1,0");
  CHECK(j["mismatches"][0]["invariant_verdict"] == "Unsuccessful");
  CHECK(j["mismatches"][0]["simulation_verdict"] == "Successful");
  CHECK(j["mismatches"][0]["reverse_bfs_member"] == false);
}

TEST_CASE("cross-check propagates the state budget") {
  // 3,0,0 stabilizes after recording one state; 2,1,0 is the first composition
  // that needs a second slot, so it is the one named by the failure.
  try {
    cross_check(3, FiringPolicy::LowestIndex, 1);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    CHECK(e.budget() == 1);
    CHECK(e.config() == make_config({2, 1, 0}));
  }
  CHECK(cross_check(3, FiringPolicy::LowestIndex, 3).mismatches.empty());
}

TEST_CASE("cross-check is policy independent") {
  for (FiringPolicy policy : {FiringPolicy::LowestIndex, FiringPolicy::HighestIndex,
                              FiringPolicy::ParallelSweep}) {
    const VerificationReport report = cross_check(4, policy);
    CHECK(report.successful_count == 9);
    CHECK(report.mismatches.empty());
  }
}
