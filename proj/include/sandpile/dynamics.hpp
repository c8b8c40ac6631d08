#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sandpile/core.hpp"

namespace sandpile {

/// Deterministic rule choosing which unstable vertices fire next.
/// LowestIndex and HighestIndex fire one vertex per step; ParallelSweep fires
/// every currently unstable vertex at once.
enum class FiringPolicy { LowestIndex, HighestIndex, ParallelSweep };

FiringPolicy parse_policy(std::string_view name);  // "lowest" | "highest" | "parallel"
std::string_view policy_name(FiringPolicy policy);

inline constexpr long long kDefaultStateBudget = 1'000'000;

enum class OutcomeKind { Terminated, Recurrent };

struct StabilizationOutcome {
  OutcomeKind kind = OutcomeKind::Terminated;
  std::optional<CycleConfig> final_config;  // Terminated only
  long long firings_total = 0;              // individual vertex firings performed
  std::vector<long long> odometer;          // per-vertex firings, Terminated only
  long long steps_to_cycle = 0;             // Recurrent only
  long long cycle_length = 0;               // Recurrent only
};

/// Thrown when stabilize visits more distinct states than its budget allows
/// without terminating or closing a cycle. Carries the starting configuration
/// so exhaustive sweeps can name the offender. Not a verdict: callers should
/// retry with a larger budget rather than treat this as recurrence.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(long long budget, CycleConfig config)
      : std::runtime_error("state budget of " + std::to_string(budget) +
                           " distinct states exhausted while stabilizing " +
                           sandpile::to_string(config)),
        budget_(budget),
        config_(std::move(config)) {}

  long long budget() const { return budget_; }
  const CycleConfig& config() const { return config_; }

 private:
  long long budget_;
  CycleConfig config_;
};

struct Step {
  CycleConfig next;
  std::vector<int> fired;  // ascending 1-based vertex indices
};

/// One policy step on an unstable configuration. Rejects stable input.
Step step(const CycleConfig& c, FiringPolicy policy);

/// Drives c until stable, or until the current configuration repeats one seen
/// earlier in this run (Recurrent). Repeat detection keys on the exact count
/// sequence, so it is sound and complete for these deterministic policies.
StabilizationOutcome stabilize(const CycleConfig& c, FiringPolicy policy,
                               long long state_budget = kDefaultStateBudget);

struct TraceEntry {
  CycleConfig state;       // configuration before the firing below
  std::vector<int> fired;  // empty once stable
};

/// The prefix of the run stabilize would perform, at most max_steps entries.
/// A run that stabilizes within the cap ends with (stable state, {}).
/// Truncation is not an error.
std::vector<TraceEntry> trace(const CycleConfig& c, FiringPolicy policy, long long max_steps);

}  // namespace sandpile
