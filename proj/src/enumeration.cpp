#include "sandpile/enumeration.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace sandpile {

std::uint64_t binomial(std::uint64_t m, std::uint64_t r) {
  if (r > m) return 0;
  r = std::min(r, m - r);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result = result * (m - r + i) / i;  // numerator is always divisible here
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("binomial(" + std::to_string(m) + "," + std::to_string(r) +
                                ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

CompositionSpace::CompositionSpace(int chips, int vertices) : chips_(chips), vertices_(vertices) {
  if (vertices < 3) {
    throw std::invalid_argument("unsupported cycle size: need at least 3 vertices, got " +
                                std::to_string(vertices));
  }
  if (chips < 0) {
    throw std::invalid_argument("chip total must be non-negative, got " + std::to_string(chips));
  }
}

std::uint64_t CompositionSpace::count() const {
  return binomial(static_cast<std::uint64_t>(chips_) + static_cast<std::uint64_t>(vertices_) - 1,
                  static_cast<std::uint64_t>(vertices_) - 1);
}

CompositionSpace::Iterator::Iterator(int chips, int vertices)
    : current_(static_cast<std::size_t>(vertices), 0), done_(false) {
  current_[0] = chips;
}

void CompositionSpace::Iterator::advance() {
  const int n = static_cast<int>(current_.size());
  // Rightmost position before the last that still holds a chip. Everything
  // between it and the last position is zero.
  int j = n - 2;
  while (j >= 0 && current_[static_cast<std::size_t>(j)] == 0) --j;
  if (j < 0) {
    done_ = true;
    return;
  }
  const int last = current_[static_cast<std::size_t>(n) - 1];
  current_[static_cast<std::size_t>(j)] -= 1;
  current_[static_cast<std::size_t>(n) - 1] = 0;
  current_[static_cast<std::size_t>(j) + 1] = last + 1;
}

SuccessfulSet reverse_bfs_successful(int n) {
  CycleConfig terminal = terminal_config(n);
  SuccessfulSet result;
  result.n = n;
  result.depth.emplace(terminal, 0);
  std::deque<CycleConfig> frontier;
  frontier.push_back(std::move(terminal));
  while (!frontier.empty()) {
    CycleConfig current = std::move(frontier.front());
    frontier.pop_front();
    const int d = result.depth.at(current);
    for (int v = 1; v <= n; ++v) {
      if (current.at(left_neighbor(v, n)) < 1 || current.at(right_neighbor(v, n)) < 1) continue;
      CycleConfig predecessor = reverse_fire(current, v);
      if (result.depth.emplace(predecessor, d + 1).second) {
        frontier.push_back(std::move(predecessor));
      }
    }
  }
  return result;
}

CycleConfig canonical_rotation(const CycleConfig& c) {
  const int n = c.n();
  const std::vector<int>& src = c.counts();
  std::vector<int> best = src;
  std::vector<int> candidate(static_cast<std::size_t>(n));
  for (int s = 1; s < n; ++s) {
    for (int j = 0; j < n; ++j) {
      candidate[static_cast<std::size_t>((j + s) % n)] = src[static_cast<std::size_t>(j)];
    }
    if (candidate < best) best = candidate;
  }
  return CycleConfig(std::move(best));
}

std::vector<RotationClass> cyclic_classes(const std::vector<CycleConfig>& configs) {
  std::map<std::vector<int>, std::set<std::vector<int>>> groups;
  int n = 0;
  for (const CycleConfig& c : configs) {
    if (n == 0) {
      n = c.n();
    } else if (c.n() != n) {
      throw std::invalid_argument("cyclic_classes: mixed cycle sizes " + std::to_string(n) +
                                  " and " + std::to_string(c.n()));
    }
    groups[canonical_rotation(c).counts()].insert(c.counts());
  }
  std::vector<RotationClass> classes;
  classes.reserve(groups.size());
  for (const auto& [representative, members] : groups) {
    RotationClass cls{CycleConfig(representative), {}};
    cls.members.reserve(members.size());
    for (const std::vector<int>& m : members) cls.members.emplace_back(m);
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace sandpile
