#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fewham/multigraph.hpp"

namespace fewham {

struct CatalogEntry {
  std::string name;
  MultiGraph graph;
};

MultiGraph complete_graph(int n);
MultiGraph complete_bipartite(int a, int b);
MultiGraph cycle_graph(int n);
MultiGraph path_graph(int n);

// Fixed small graphs used by the oracle-equivalence and connectivity suites.
// max_n truncates to graphs with at most that many vertices.
std::vector<CatalogEntry> catalog(int max_n = 12);

// Seeded deterministic generators (std::mt19937_64, portable across builds).
using Rng = std::mt19937_64;

// Uniform-ish simple k-regular graph via the pairing model with rejection;
// requires n*k even and k < n.
MultiGraph random_regular_graph(int n, int k, Rng& rng, bool require_connected = true);

// Loopless multigraph: m random pairs, each with multiplicity 1 or 2.
MultiGraph random_multigraph(int n, int m, Rng& rng);

} // namespace fewham
