#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "fewham/bigcount.hpp"
#include "fewham/multigraph.hpp"

namespace fewham {

enum class CountEngine { kAuto, kBacktrack, kInterfaceDp };

struct CountOptions {
  std::optional<std::uint64_t> node_budget;            // branch nodes (backtrack) / states (dp)
  std::optional<std::chrono::milliseconds> time_budget;
  bool retain_cycles = false;
  int workers = 1;
  bool stop_at_first = false;          // existence queries: abort once a cycle is found
  CountEngine engine = CountEngine::kAuto;
  std::vector<EdgeRef> forced_include; // specific copies forced into every cycle
};

// A Hamiltonian cycle in canonical form: vertex sequence starting at the
// lowest id with its lower neighbor second; copies[i] is the parallel-copy
// index of the edge vertices[i] -- vertices[(i+1) % n].
struct HamiltonCycle {
  std::vector<Vertex> vertices;
  std::vector<int> copies;

  friend bool operator==(const HamiltonCycle&, const HamiltonCycle&) = default;
  friend auto operator<=>(const HamiltonCycle&, const HamiltonCycle&) = default;
};

struct HamiltonReport {
  BigCount count = 0;
  std::vector<HamiltonCycle> cycles; // filled iff retain_cycles; sorted canonically
  std::uint64_t nodes_expanded = 0;
  bool budget_exhausted = false;     // count is only a verified lower bound
  std::chrono::microseconds elapsed{0};
  CountEngine engine_used = CountEngine::kBacktrack;
};

// Exact count of Hamiltonian cycles as EdgeRef multisets: parallel copies give
// distinct cycles, a cycle and its reversal are identified. n < 3 counts 0.
HamiltonReport count_hamiltonian_cycles(const MultiGraph& g, const CountOptions& opt = {});

// Permutation oracle, n <= 11 only.
BigCount brute_force_count(const MultiGraph& g);

// Cycles whose edge multiset contains exactly the given copy.
BigCount count_through_edge(const MultiGraph& g, const EdgeRef& e, const CountOptions& opt = {});

struct HamPathResult {
  bool exists = false;
  std::vector<Vertex> path; // witness vertex sequence from u to v when found
};
// Spanning path with endpoints exactly u and v.
HamPathResult has_hamiltonian_path(const MultiGraph& g, Vertex u, Vertex v);

// Spanning 2-regular sub-multigraph. Components are cycles; a doubled pair
// used twice forms a 2-cycle component. Identified by its multiplicity map,
// with copies numbered 0..k-1 when k copies of a class are used.
struct TwoFactor {
  std::vector<std::vector<EdgeRef>> components;
  std::vector<int> component_lengths;

  std::vector<EdgeRef> all_edges() const;
  friend bool operator==(const TwoFactor&, const TwoFactor&) = default;
};

struct TwoFactorList {
  std::vector<TwoFactor> factors; // lexicographic by sorted edge list
  bool truncated = false;
};
TwoFactorList enumerate_two_factors(const MultiGraph& g,
                                    std::optional<std::size_t> limit = std::nullopt);

// A 2-factor with exactly two components, e's pair in one and f's pair in the
// other, or nullopt when none exists.
std::optional<TwoFactor> exists_split_two_factor(const MultiGraph& g, const EdgeRef& e,
                                                 const EdgeRef& f);

// Validates that tf is a spanning 2-regular sub-multigraph of g with correctly
// decomposed components. Returns an error message, or nullopt when valid.
std::optional<std::string> check_two_factor(const MultiGraph& g, const TwoFactor& tf);

namespace detail {
// Backtracking engine entry point (always used for retain/stop/forced paths).
HamiltonReport count_backtrack(const MultiGraph& g, const CountOptions& opt);
// Interface dynamic program over a greedy low-width vertex order; count only.
HamiltonReport count_interface_dp(const MultiGraph& g, const CountOptions& opt);
} // namespace detail

} // namespace fewham
