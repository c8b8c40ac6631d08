#pragma once

#include <cstdint>
#include <iterator>
#include <unordered_map>
#include <vector>

#include "sandpile/core.hpp"

namespace sandpile {

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::uint64_t m, std::uint64_t r);

/// All length-n weak compositions of k, streamed in lexicographically
/// descending order starting from [k,0,...,0]. Yields exactly
/// binomial(k+n-1, n-1) distinct configurations.
class CompositionSpace {
 public:
  CompositionSpace(int chips, int vertices);

  int chips() const { return chips_; }
  int vertices() const { return vertices_; }
  std::uint64_t count() const;

  class Iterator {
   public:
    using value_type = CycleConfig;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    Iterator(int chips, int vertices);

    CycleConfig operator*() const { return CycleConfig(current_); }
    Iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }

    friend bool operator==(const Iterator& it, std::default_sentinel_t) { return it.done_; }

   private:
    void advance();

    std::vector<int> current_;
    bool done_ = true;
  };

  Iterator begin() const { return Iterator(chips_, vertices_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int chips_;
  int vertices_;
};

inline CompositionSpace weak_compositions(int chips, int vertices) {
  return CompositionSpace(chips, vertices);
}

/// Closure of the terminal configuration under reverse firing, with the
/// minimal number of reverse turns recorded per member.
struct SuccessfulSet {
  int n = 0;
  std::unordered_map<CycleConfig, int> depth;

  bool contains(const CycleConfig& c) const { return depth.find(c) != depth.end(); }
  std::size_t size() const { return depth.size(); }
};

/// Breadth-first search from terminal_config(n) under reverse_fire at every
/// vertex whose move stays non-negative, vertices tried in ascending order.
/// Every reachable state is a weak composition of n into n parts, so the
/// search always terminates.
SuccessfulSet reverse_bfs_successful(int n);

/// Lexicographically smallest of the n rotations of c. Configurations equal
/// under rotation map to the same output.
CycleConfig canonical_rotation(const CycleConfig& c);

struct RotationClass {
  CycleConfig representative;        // canonical rotation
  std::vector<CycleConfig> members;  // ascending
};

/// Partition into rotation-equivalence classes, classes ordered by
/// representative. Duplicates collapse; mixed cycle sizes are rejected.
std::vector<RotationClass> cyclic_classes(const std::vector<CycleConfig>& configs);

}  // namespace sandpile
