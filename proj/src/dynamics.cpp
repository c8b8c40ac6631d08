#include "sandpile/dynamics.hpp"

#include <unordered_map>
#include <utility>

namespace sandpile {

FiringPolicy parse_policy(std::string_view name) {
  if (name == "lowest") return FiringPolicy::LowestIndex;
  if (name == "highest") return FiringPolicy::HighestIndex;
  if (name == "parallel") return FiringPolicy::ParallelSweep;
  throw std::invalid_argument("unknown firing policy '" + std::string(name) +
                              "': expected lowest, highest, or parallel");
}

std::string_view policy_name(FiringPolicy policy) {
  switch (policy) {
    case FiringPolicy::LowestIndex: return "lowest";
    case FiringPolicy::HighestIndex: return "highest";
    case FiringPolicy::ParallelSweep: return "parallel";
  }
  return "?";
}

Step step(const CycleConfig& c, FiringPolicy policy) {
  std::vector<int> unstable = unstable_vertices(c);
  if (unstable.empty()) {
    throw std::invalid_argument("nothing to fire: configuration " + to_string(c) + " is stable");
  }
  switch (policy) {
    case FiringPolicy::LowestIndex:
      return {fire(c, unstable.front()), {unstable.front()}};
    case FiringPolicy::HighestIndex:
      return {fire(c, unstable.back()), {unstable.back()}};
    case FiringPolicy::ParallelSweep:
      break;
  }
  const int n = c.n();
  std::vector<int> next = c.counts();
  for (int v : unstable) {
    next[static_cast<std::size_t>(v) - 1] -= 2;
    next[static_cast<std::size_t>(left_neighbor(v, n)) - 1] += 1;
    next[static_cast<std::size_t>(right_neighbor(v, n)) - 1] += 1;
  }
  return {CycleConfig(std::move(next)), std::move(unstable)};
}

StabilizationOutcome stabilize(const CycleConfig& c, FiringPolicy policy, long long state_budget) {
  if (state_budget < 1) throw std::invalid_argument("state budget must be positive");
  std::unordered_map<CycleConfig, long long> seen;
  std::vector<long long> odometer(static_cast<std::size_t>(c.n()), 0);
  long long firings = 0;
  long long step_index = 0;
  CycleConfig current = c;
  while (true) {
    if (is_stable(current)) {
      StabilizationOutcome out;
      out.kind = OutcomeKind::Terminated;
      out.firings_total = firings;
      out.odometer = std::move(odometer);
      out.final_config = std::move(current);
      return out;
    }
    if (auto it = seen.find(current); it != seen.end()) {
      StabilizationOutcome out;
      out.kind = OutcomeKind::Recurrent;
      out.firings_total = firings;
      out.steps_to_cycle = it->second;
      out.cycle_length = step_index - it->second;
      return out;
    }
    if (static_cast<long long>(seen.size()) >= state_budget) {
      throw BudgetExhausted(state_budget, c);
    }
    seen.emplace(current, step_index);
    Step s = step(current, policy);
    firings += static_cast<long long>(s.fired.size());
    for (int v : s.fired) ++odometer[static_cast<std::size_t>(v) - 1];
    current = std::move(s.next);
    ++step_index;
  }
}

std::vector<TraceEntry> trace(const CycleConfig& c, FiringPolicy policy, long long max_steps) {
  std::vector<TraceEntry> entries;
  CycleConfig current = c;
  while (static_cast<long long>(entries.size()) < max_steps) {
    if (is_stable(current)) {
      entries.push_back({std::move(current), {}});
      break;
    }
    Step s = step(current, policy);
    entries.push_back({std::move(current), std::move(s.fired)});
    current = std::move(s.next);
  }
  return entries;
}

}  // namespace sandpile
