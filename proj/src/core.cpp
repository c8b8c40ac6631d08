#include "sandpile/core.hpp"

#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <system_error>
#include <utility>

namespace sandpile {

namespace {

void check_vertex(const CycleConfig& c, int vertex) {
  if (vertex < 1 || vertex > c.n()) {
    throw std::invalid_argument("vertex index " + std::to_string(vertex) +
                                " out of range 1.." + std::to_string(c.n()));
  }
}

}  // namespace

CycleConfig::CycleConfig(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 3) {
    throw std::invalid_argument("unsupported cycle size: need at least 3 vertices, got " +
                                std::to_string(counts_.size()));
  }
  for (int v : counts_) {
    if (v < 0) {
      throw std::invalid_argument("chip counts must be non-negative, got " + std::to_string(v));
    }
  }
}

CycleConfig make_config(std::vector<int> counts) { return CycleConfig(std::move(counts)); }

CycleConfig parse_config(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty configuration string");
  std::vector<int> counts;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view token =
        comma == std::string_view::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
      throw std::invalid_argument("bad count '" + std::string(token) +
                                  "': expected a non-negative decimal integer");
    }
    counts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return CycleConfig(std::move(counts));
}

std::string to_string(const CycleConfig& c) {
  std::string out;
  for (int i = 0; i < c.n(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(c.counts()[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const CycleConfig& c) { return os << to_string(c); }

long long total_chips(const CycleConfig& c) {
  return std::accumulate(c.counts().begin(), c.counts().end(), 0LL);
}

Residue invariant(const CycleConfig& c) {
  long long sum = 0;
  for (int i = 1; i <= c.n(); ++i) sum += static_cast<long long>(i) * c.at(i);
  return Residue{static_cast<int>(sum % c.n())};
}

CycleConfig terminal_config(int n) {
  if (n < 3) {
    throw std::invalid_argument("unsupported cycle size: need at least 3 vertices, got " +
                                std::to_string(n));
  }
  return CycleConfig(std::vector<int>(static_cast<std::size_t>(n), 1));
}

Residue terminal_invariant(int n) {
  if (n < 3) {
    throw std::invalid_argument("unsupported cycle size: need at least 3 vertices, got " +
                                std::to_string(n));
  }
  return Residue{n % 2 == 0 ? n / 2 : 0};
}

CycleConfig rotate(const CycleConfig& c, int shift) {
  const int n = c.n();
  int s = shift % n;
  if (s < 0) s += n;
  std::vector<int> next(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    next[static_cast<std::size_t>((j + s) % n)] = c.counts()[static_cast<std::size_t>(j)];
  }
  return CycleConfig(std::move(next));
}

CycleConfig reflect(const CycleConfig& c) {
  std::vector<int> next(c.counts().rbegin(), c.counts().rend());
  return CycleConfig(std::move(next));
}

CycleConfig fire(const CycleConfig& c, int vertex) {
  check_vertex(c, vertex);
  if (c.at(vertex) < 2) {
    throw std::invalid_argument("stable vertex " + std::to_string(vertex) +
                                ": needs at least 2 chips to fire");
  }
  const int n = c.n();
  std::vector<int> next = c.counts();
  next[static_cast<std::size_t>(vertex) - 1] -= 2;
  next[static_cast<std::size_t>(left_neighbor(vertex, n)) - 1] += 1;
  next[static_cast<std::size_t>(right_neighbor(vertex, n)) - 1] += 1;
  return CycleConfig(std::move(next));
}

CycleConfig reverse_fire(const CycleConfig& c, int vertex) {
  check_vertex(c, vertex);
  const int n = c.n();
  const int left = left_neighbor(vertex, n);
  const int right = right_neighbor(vertex, n);
  if (c.at(left) < 1 || c.at(right) < 1) {
    throw std::invalid_argument("reverse move would go negative: vertex " +
                                std::to_string(vertex) + " needs a chip on both neighbors");
  }
  std::vector<int> next = c.counts();
  next[static_cast<std::size_t>(vertex) - 1] += 2;
  next[static_cast<std::size_t>(left) - 1] -= 1;
  next[static_cast<std::size_t>(right) - 1] -= 1;
  return CycleConfig(std::move(next));
}

bool is_stable(const CycleConfig& c) {
  for (int v : c.counts()) {
    if (v > 1) return false;
  }
  return true;
}

std::vector<int> unstable_vertices(const CycleConfig& c) {
  std::vector<int> out;
  for (int i = 1; i <= c.n(); ++i) {
    if (c.at(i) >= 2) out.push_back(i);
  }
  return out;
}

}  // namespace sandpile

std::size_t std::hash<sandpile::CycleConfig>::operator()(
    const sandpile::CycleConfig& c) const noexcept {
  std::size_t h = c.counts().size();
  for (int v : c.counts()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}
