#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sandpile/core.hpp"
#include "sandpile/dynamics.hpp"

namespace sandpile {

enum class Verdict { Successful, Unsuccessful };
enum class Method { Invariant, Simulation, ReverseBfs };

std::string_view verdict_name(Verdict v);

/// Classifier output plus the residue evidence behind it. firings is filled
/// only by the simulation route, and only when it terminates.
struct Classification {
  Verdict verdict = Verdict::Unsuccessful;
  Residue config_invariant;
  Residue target_invariant;
  Method method = Method::Invariant;
  std::optional<long long> firings;
};

/// Successful iff invariant(c) equals the terminal residue. Only defined in
/// the critical regime: rejects configurations whose chip total differs from
/// the cycle size.
Classification classify_by_invariant(const CycleConfig& c);

/// Successful iff stabilization terminates (the final state is then
/// necessarily the all-ones configuration). Same k = n requirement.
Classification classify_by_simulation(const CycleConfig& c,
                                      FiringPolicy policy = FiringPolicy::LowestIndex,
                                      long long state_budget = kDefaultStateBudget);

struct Mismatch {
  CycleConfig config;
  bool invariant_successful = false;
  bool simulation_successful = false;
  bool reverse_bfs_member = false;
};

/// Exhaustive three-way cross-check summary for one cycle size.
struct VerificationReport {
  int n = 0;
  std::uint64_t total_configs = 0;
  std::map<int, std::uint64_t> residue_histogram;  // residue -> count, zero counts omitted
  std::uint64_t successful_count = 0;              // simulation verdicts
  std::vector<Mismatch> mismatches;                // sorted by textual form; empty iff all agree
  long long elapsed_ms = 0;
};

/// Runs every weak composition of n chips on n vertices through all three
/// classifiers (invariant, simulation, reverse-BFS membership) and records
/// any disagreement as a first-class result rather than an assertion.
VerificationReport cross_check(int n, FiringPolicy policy = FiringPolicy::LowestIndex,
                               long long state_budget = kDefaultStateBudget);

/// Residue counts over all weak compositions of k chips on n vertices.
std::map<int, std::uint64_t> residue_histogram(int n, int k);

/// Stable field order, integer values only; parse + dump round-trips exactly.
nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace sandpile
