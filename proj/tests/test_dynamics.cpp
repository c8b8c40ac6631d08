#include <random>
#include <stdexcept>

#include "doctest.h"
#include "sandpile/dynamics.hpp"
#include "sandpile/enumeration.hpp"

using namespace sandpile;

TEST_CASE("policy names round-trip") {
  for (FiringPolicy p :
       {FiringPolicy::LowestIndex, FiringPolicy::HighestIndex, FiringPolicy::ParallelSweep}) {
    CHECK(parse_policy(policy_name(p)) == p);
  }
  CHECK_THROWS_AS(parse_policy("sideways"), std::invalid_argument);
}

TEST_CASE("step fires the selected vertices") {
  const CycleConfig c = make_config({2, 2, 0, 0});

  const Step lowest = step(c, FiringPolicy::LowestIndex);
  CHECK(lowest.next == make_config({0, 3, 0, 1}));
  CHECK(lowest.fired == std::vector<int>{1});

  const Step highest = step(c, FiringPolicy::HighestIndex);
  CHECK(highest.next == make_config({3, 0, 1, 0}));
  CHECK(highest.fired == std::vector<int>{2});

  const Step parallel = step(c, FiringPolicy::ParallelSweep);
  CHECK(parallel.next == make_config({1, 1, 1, 1}));
  CHECK(parallel.fired == std::vector<int>{1, 2});

  CHECK_THROWS_AS(step(make_config({1, 1, 1}), FiringPolicy::LowestIndex), std::invalid_argument);
}

TEST_CASE("parallel step equals the sum of its single fires") {
  // each firing vertex loses 2, gains 1 per currently-unstable neighbor
  const CycleConfig c = make_config({2, 2, 2, 0});
  const Step parallel = step(c, FiringPolicy::ParallelSweep);
  CHECK(parallel.fired == std::vector<int>{1, 2, 3});
  CHECK(parallel.next == fire(fire(fire(c, 1), 2), 3));
}

TEST_CASE("stabilize terminates on the worked n=4 chain") {
  const StabilizationOutcome one = stabilize(make_config({0, 3, 0, 1}), FiringPolicy::LowestIndex);
  CHECK(one.kind == OutcomeKind::Terminated);
  CHECK(*one.final_config == terminal_config(4));
  CHECK(one.firings_total == 1);
  CHECK(one.odometer == std::vector<long long>{0, 1, 0, 0});

  const StabilizationOutcome two = stabilize(make_config({0, 2, 2, 0}), FiringPolicy::LowestIndex);
  CHECK(two.kind == OutcomeKind::Terminated);
  CHECK(*two.final_config == terminal_config(4));
  CHECK(two.firings_total == 2);

  const StabilizationOutcome zero = stabilize(terminal_config(4), FiringPolicy::LowestIndex);
  CHECK(zero.kind == OutcomeKind::Terminated);
  CHECK(zero.firings_total == 0);
}

TEST_CASE("stabilize detects the 3-cycle orbit of 2,1,0") {
  const StabilizationOutcome out = stabilize(make_config({2, 1, 0}), FiringPolicy::LowestIndex);
  CHECK(out.kind == OutcomeKind::Recurrent);
  CHECK(out.steps_to_cycle == 0);
  CHECK(out.cycle_length == 3);
  CHECK(out.firings_total == 3);
  CHECK_FALSE(out.final_config.has_value());
}

TEST_CASE("stabilize respects the distinct-state budget") {
  // the 2,1,0 orbit needs exactly 3 distinct states
  CHECK_THROWS_AS(stabilize(make_config({2, 1, 0}), FiringPolicy::LowestIndex, 2),
                  BudgetExhausted);
  try {
    stabilize(make_config({2, 1, 0}), FiringPolicy::LowestIndex, 2);
  } catch (const BudgetExhausted& e) {
    CHECK(e.budget() == 2);
    CHECK(e.config() == make_config({2, 1, 0}));
  }
  CHECK(stabilize(make_config({2, 1, 0}), FiringPolicy::LowestIndex, 3).kind ==
        OutcomeKind::Recurrent);
  // stable input resolves without recording any state
  CHECK(stabilize(terminal_config(3), FiringPolicy::LowestIndex, 1).kind ==
        OutcomeKind::Terminated);
  CHECK_THROWS_AS(stabilize(make_config({2, 1, 0}), FiringPolicy::LowestIndex, 0),
                  std::invalid_argument);
}

TEST_CASE("trace records state and firing set per step") {
  const std::vector<TraceEntry> short_run =
      trace(make_config({0, 3, 0, 1}), FiringPolicy::LowestIndex, 10);
  REQUIRE(short_run.size() == 2);
  CHECK(short_run[0].state == make_config({0, 3, 0, 1}));
  CHECK(short_run[0].fired == std::vector<int>{2});
  CHECK(short_run[1].state == terminal_config(4));
  CHECK(short_run[1].fired.empty());

  const std::vector<TraceEntry> stable = trace(make_config({1, 1, 1}), FiringPolicy::LowestIndex, 10);
  REQUIRE(stable.size() == 1);
  CHECK(stable[0].fired.empty());

  const std::vector<TraceEntry> orbit = trace(make_config({2, 1, 0}), FiringPolicy::LowestIndex, 3);
  REQUIRE(orbit.size() == 3);
  CHECK(orbit[0].state == make_config({2, 1, 0}));
  CHECK(orbit[1].state == make_config({0, 2, 1}));
  CHECK(orbit[2].state == make_config({1, 0, 2}));
  CHECK(fire(orbit[2].state, orbit[2].fired.at(0)) == orbit[0].state);
}

TEST_CASE("every traced step conserves chips and invariant") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> n_dist(3, 10);
  std::uniform_int_distribution<int> count_dist(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = n_dist(rng);
    std::vector<int> counts(static_cast<std::size_t>(n));
    for (int& c : counts) c = count_dist(rng);
    const CycleConfig start(counts);
    for (FiringPolicy policy : {FiringPolicy::LowestIndex, FiringPolicy::HighestIndex,
                                FiringPolicy::ParallelSweep}) {
      const std::vector<TraceEntry> entries = trace(start, policy, 25);
      for (const TraceEntry& e : entries) {
        CHECK(total_chips(e.state) == total_chips(start));
        CHECK(invariant(e.state) == invariant(start));
      }
    }
  }
}

TEST_CASE("policies agree on outcome for small critical piles") {
  for (int n = 3; n <= 5; ++n) {
    for (const CycleConfig& c : weak_compositions(n, n)) {
      const StabilizationOutcome lowest = stabilize(c, FiringPolicy::LowestIndex);
      const StabilizationOutcome highest = stabilize(c, FiringPolicy::HighestIndex);
      const StabilizationOutcome parallel = stabilize(c, FiringPolicy::ParallelSweep);
      CHECK(lowest.kind == highest.kind);
      CHECK(lowest.kind == parallel.kind);
      if (lowest.kind == OutcomeKind::Terminated) {
        CHECK(*lowest.final_config == *highest.final_config);
        CHECK(*lowest.final_config == *parallel.final_config);
        CHECK(lowest.firings_total == highest.firings_total);
        CHECK(lowest.firings_total == parallel.firings_total);
        CHECK(lowest.odometer == highest.odometer);
        CHECK(lowest.odometer == parallel.odometer);
      }
    }
  }
}

TEST_CASE("critical terminating piles settle to all ones") {
  for (int n = 3; n <= 6; ++n) {
    for (const CycleConfig& c : weak_compositions(n, n)) {
      const StabilizationOutcome out = stabilize(c, FiringPolicy::LowestIndex);
      if (out.kind == OutcomeKind::Terminated) {
        CHECK(*out.final_config == terminal_config(n));
      }
    }
  }
}
