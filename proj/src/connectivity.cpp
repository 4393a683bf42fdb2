#include "fewham/connectivity.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>

namespace fewham {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Small Dinic network for the handful of unit-ish capacity flows we need.
class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : head_(n, -1), level_(n), iter_(n) {}

  void add_arc(int from, int to, int cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  void add_undirected(int a, int b, int cap) {
    arcs_.push_back({b, head_[a], cap});
    head_[a] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({a, head_[b], cap});
    head_[b] = static_cast<int>(arcs_.size()) - 1;
  }

  int max_flow(int s, int t, int cutoff = kInf) {
    int flow = 0;
    while (flow < cutoff && bfs(s, t)) {
      iter_ = head_;
      int f;
      while (flow < cutoff && (f = dfs(s, t, cutoff - flow)) > 0) flow += f;
    }
    return flow;
  }

  // Residual-reachable set from s after the last max_flow call.
  std::vector<char> reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    int cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int a = head_[v]; a >= 0; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int v, int t, int limit) {
    if (v == t) return limit;
    for (int& a = iter_[v]; a >= 0; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap > 0 && level_[arc.to] == level_[v] + 1) {
        int f = dfs(arc.to, t, std::min(limit, arc.cap));
        if (f > 0) {
          arc.cap -= f;
          arcs_[a ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

FlowNetwork edge_flow_network(const MultiGraph& g) {
  FlowNetwork net(g.n());
  for (const auto& c : g.classes()) net.add_undirected(c.u, c.v, c.mult);
  return net;
}

// Vertex-split network: vertex v -> nodes 2v (in) and 2v+1 (out).
FlowNetwork split_flow_network(const MultiGraph& g) {
  FlowNetwork net(2 * g.n());
  for (Vertex v = 0; v < g.n(); ++v) net.add_arc(2 * v, 2 * v + 1, 1);
  for (const auto& c : g.classes()) {
    net.add_arc(2 * c.u + 1, 2 * c.v, kInf);
    net.add_arc(2 * c.v + 1, 2 * c.u, kInf);
  }
  return net;
}

} // namespace

EdgeConnectivity edge_connectivity(const MultiGraph& g) {
  EdgeConnectivity out;
  if (g.n() <= 1) return out;
  if (!g.connected()) return out; // value 0, empty witness

  int best = kInf;
  int best_t = -1;
  for (Vertex t = 1; t < g.n(); ++t) {
    FlowNetwork net = edge_flow_network(g);
    int f = net.max_flow(0, t, best);
    if (f < best) {
      best = f;
      best_t = t;
    }
  }
  out.value = best;
  FlowNetwork net = edge_flow_network(g);
  net.max_flow(0, best_t);
  std::vector<char> side = net.reachable(0);
  for (const auto& c : g.classes()) {
    if (side[c.u] != side[c.v]) {
      for (int k = 0; k < c.mult; ++k) out.witness.push_back(EdgeRef(c.u, c.v, k));
    }
  }
  return out;
}

VertexConnectivity vertex_connectivity(const MultiGraph& g) {
  if (!g.simple()) {
    throw GraphError("vertex_connectivity is defined for simple graphs only; "
                     "expand parallel edges first (e.g. meredith_expand)");
  }
  VertexConnectivity out;
  int n = g.n();
  if (n <= 1) return out;
  if (!g.connected()) {
    out.witness = std::vector<Vertex>{};
    return out;
  }

  // v0 paired with all non-neighbors, plus all non-adjacent pairs inside the
  // closed neighborhood of v0. Complete graphs have no candidate pair.
  Vertex v0 = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (g.degree(v) < g.degree(v0)) v0 = v;
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex t = 0; t < n; ++t) {
    if (t != v0 && !g.has_edge(v0, t)) pairs.emplace_back(v0, t);
  }
  std::vector<Vertex> hood = g.neighbors(v0);
  hood.push_back(v0);
  std::sort(hood.begin(), hood.end());
  for (std::size_t i = 0; i < hood.size(); ++i) {
    for (std::size_t j = i + 1; j < hood.size(); ++j) {
      if (!g.has_edge(hood[i], hood[j])) pairs.emplace_back(hood[i], hood[j]);
    }
  }

  int best = n - 1;
  std::pair<Vertex, Vertex> best_pair{-1, -1};
  for (auto [s, t] : pairs) {
    FlowNetwork net = split_flow_network(g);
    int f = net.max_flow(2 * s + 1, 2 * t, best);
    if (f < best) {
      best = f;
      best_pair = {s, t};
    }
  }
  out.value = best;
  if (best_pair.first >= 0) {
    FlowNetwork net = split_flow_network(g);
    net.max_flow(2 * best_pair.first + 1, 2 * best_pair.second);
    std::vector<char> side = net.reachable(2 * best_pair.first + 1);
    std::vector<Vertex> cut;
    for (Vertex v = 0; v < n; ++v) {
      if (side[2 * v] && !side[2 * v + 1]) cut.push_back(v);
    }
    out.witness = std::move(cut);
  }
  return out;
}

int oracle_connectivity(const MultiGraph& g, ConnectivityMode mode) {
  int n = g.n();
  if (n > 12) throw GraphError("oracle_connectivity limited to n <= 12");
  if (n <= 1) return 0;
  if (!g.connected()) return 0;

  if (mode == ConnectivityMode::kEdge) {
    int best = kInf;
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
      // Side A = vertices whose bit is set, plus vertex n-1 always on side B.
      int crossing = 0;
      for (const auto& c : g.classes()) {
        bool au = c.u < n - 1 && (mask >> c.u) & 1;
        bool av = c.v < n - 1 && (mask >> c.v) & 1;
        if (au != av) crossing += c.mult;
      }
      best = std::min(best, crossing);
    }
    return best;
  }

  // Vertex mode: subsets in increasing size; a complete graph yields n-1.
  auto disconnected_without = [&](unsigned removed) {
    int start = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!((removed >> v) & 1)) {
        start = v;
        break;
      }
    }
    if (start < 0) return false;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{start};
    seen[start] = 1;
    int reached = 1;
    int alive = n - std::popcount(removed);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (auto [cls, w] : g.incident(v)) {
        if (((removed >> w) & 1) || seen[w]) continue;
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
    return reached < alive;
  };
  for (int k = 1; k <= n - 2; ++k) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != k) continue;
      if (disconnected_without(mask)) return k;
    }
  }
  return n - 1;
}

} // namespace fewham
