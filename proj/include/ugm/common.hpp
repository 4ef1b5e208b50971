#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ugm {

using cdouble = std::complex<double>;

inline constexpr uint64_t kDefaultMemoryBudget = 8ull << 30;  // 8 GiB

// ---------------------------------------------------------------------------
// Seeded randomness. Every random choice in the library flows from an
// explicit 64-bit seed; derived streams are split off a master seed with
// splitmix64 so runs replay identically on any platform.

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr uint64_t derive_seed(uint64_t master, uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x9e3779b9ull));
}

// Uniform double in [0, 1) from the top 53 bits of the generator.
inline double uniform_double(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). Plain modulo draw: the ranges used here are
// tiny and the result is identical on every platform.
inline uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
  return rng() % n;
}

// ---------------------------------------------------------------------------
// Undirected graph with sorted adjacency lists.

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}

  int vertex_count() const { return static_cast<int>(adj_.size()); }

  void add_edge(int u, int v) {
    if (u == v) return;
    insert_sorted(adj_[u], v);
    insert_sorted(adj_[v], u);
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  size_t edge_count() const {
    size_t total = 0;
    for (const auto& row : adj_) total += row.size();
    return total / 2;
  }

 private:
  static void insert_sorted(std::vector<int>& row, int v) {
    auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v) row.insert(it, v);
  }

  std::vector<std::vector<int>> adj_;
};

// ---------------------------------------------------------------------------
// Raised when an elimination step would exceed the configured memory budget.
// Carries the rank of the offending tensor so callers can report it.

class budget_error : public std::runtime_error {
 public:
  budget_error(int rank, uint64_t bytes, uint64_t budget)
      : std::runtime_error("memory budget exceeded: rank-" + std::to_string(rank) +
                           " tensor needs " + std::to_string(bytes) + " bytes (budget " +
                           std::to_string(budget) + ")"),
        rank(rank),
        bytes(bytes),
        budget(budget) {}

  int rank;
  uint64_t bytes;
  uint64_t budget;
};

}  // namespace ugm
