#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sandpile {

/// Chip counts on the vertices of a cycle, vertex 1 first. Immutable value:
/// every operation below returns a new configuration. Cycles shorter than 3
/// vertices are rejected (the neighbor relation degenerates there).
class CycleConfig {
 public:
  explicit CycleConfig(std::vector<int> counts);

  int n() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& counts() const { return counts_; }

  /// 1-based access, pos in [1, n].
  int at(int pos) const { return counts_[static_cast<std::size_t>(pos) - 1]; }

  friend bool operator==(const CycleConfig&, const CycleConfig&) = default;
  friend auto operator<=>(const CycleConfig&, const CycleConfig&) = default;

 private:
  std::vector<int> counts_;
};

/// Value of the characteristic sum mod n, always in [0, n).
struct Residue {
  int value = 0;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// Neighbor indices on the cycle, 1-based with wraparound.
inline int left_neighbor(int vertex, int n) { return vertex == 1 ? n : vertex - 1; }
inline int right_neighbor(int vertex, int n) { return vertex == n ? 1 : vertex + 1; }

CycleConfig make_config(std::vector<int> counts);

/// Parses the canonical textual form: comma-separated decimal counts with no
/// spaces, vertex 1 first, e.g. "0,3,0,1".
CycleConfig parse_config(std::string_view text);
std::string to_string(const CycleConfig& c);
std::ostream& operator<<(std::ostream& os, const CycleConfig& c);

long long total_chips(const CycleConfig& c);

/// Characteristic residue (sum of position*count over 1-based positions) mod n.
/// Conserved by fire/reverse_fire at every vertex, wraparound included.
Residue invariant(const CycleConfig& c);

/// The all-ones configuration, the unique stable configuration with n chips.
CycleConfig terminal_config(int n);

/// invariant(terminal_config(n)) in closed form: 0 for odd n, n/2 for even n.
Residue terminal_invariant(int n);

/// Cyclic shift: the chips at position i move to position i+shift (mod n).
/// Any shift is accepted, negative included.
CycleConfig rotate(const CycleConfig& c, int shift);

/// Order reversal: new position j holds old position n+1-j.
CycleConfig reflect(const CycleConfig& c);

/// Topple: vertex loses 2 chips, each cyclic neighbor gains 1.
/// Requires at least 2 chips at the vertex.
CycleConfig fire(const CycleConfig& c, int vertex);

/// Exact inverse of fire: vertex gains 2, each neighbor loses 1.
/// Requires at least 1 chip at both neighbors.
CycleConfig reverse_fire(const CycleConfig& c, int vertex);

bool is_stable(const CycleConfig& c);

/// All vertices holding 2 or more chips, ascending 1-based indices.
std::vector<int> unstable_vertices(const CycleConfig& c);

}  // namespace sandpile

template <>
struct std::hash<sandpile::CycleConfig> {
  std::size_t operator()(const sandpile::CycleConfig& c) const noexcept;
};
