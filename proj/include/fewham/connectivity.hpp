#pragma once

#include <optional>
#include <vector>

#include "fewham/multigraph.hpp"

namespace fewham {

struct EdgeConnectivity {
  int value = 0;
  std::vector<EdgeRef> witness; // a minimum disconnecting edge set (empty iff value 0)
};

struct VertexConnectivity {
  int value = 0;
  // A minimum disconnecting vertex set; nullopt for complete graphs (value n-1).
  std::optional<std::vector<Vertex>> witness;
};

// Unit capacity per parallel copy; min over t != 0 of maxflow(0, t).
EdgeConnectivity edge_connectivity(const MultiGraph& g);

// Standard vertex-split flow network. Simple graphs only; multigraph callers
// must expand parallel edges first.
VertexConnectivity vertex_connectivity(const MultiGraph& g);

enum class ConnectivityMode { kVertex, kEdge };

// Exhaustive-cut oracle, n <= 12: smallest vertex subset whose removal
// disconnects (n-1 for complete graphs), or the minimum crossing multiplicity
// over all bipartitions.
int oracle_connectivity(const MultiGraph& g, ConnectivityMode mode);

} // namespace fewham
