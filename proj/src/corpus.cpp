#include "fewham/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "fewham/constructions.hpp"

namespace fewham {

MultiGraph complete_graph(int n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  }
  return b.build(false);
}

MultiGraph complete_bipartite(int a, int b) {
  GraphBuilder bld(a + b);
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = 0; v < b; ++v) bld.add_edge(u, a + v);
  }
  return bld.build(false);
}

MultiGraph cycle_graph(int n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
  return b.build(n > 2);
}

MultiGraph path_graph(int n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return b.build(false);
}

std::vector<CatalogEntry> catalog(int max_n) {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string name, MultiGraph g) {
    if (g.n() <= max_n) out.push_back({std::move(name), std::move(g)});
  };

  for (int n = 2; n <= 6; ++n) add("K" + std::to_string(n), complete_graph(n));
  add("K2,2", complete_bipartite(2, 2));
  add("K2,3", complete_bipartite(2, 3));
  add("K3,3", complete_bipartite(3, 3));
  add("K3,4", complete_bipartite(3, 4));
  for (int n = 3; n <= 9; ++n) add("C" + std::to_string(n), cycle_graph(n));
  add("P4", path_graph(4));
  add("P6", path_graph(6));
  add("star5", complete_bipartite(1, 5));

  {
    GraphBuilder b(6); // triangular prism
    int tri[2][3] = {{0, 1, 2}, {3, 4, 5}};
    for (auto& t : tri) {
      b.add_edge(t[0], t[1]);
      b.add_edge(t[1], t[2]);
      b.add_edge(t[2], t[0]);
    }
    for (int i = 0; i < 3; ++i) b.add_edge(tri[0][i], tri[1][i]);
    add("prism", b.build(false));
  }
  {
    GraphBuilder b(8); // 3-cube
    for (int v = 0; v < 8; ++v) {
      for (int bit = 0; bit < 3; ++bit) {
        int w = v ^ (1 << bit);
        if (v < w) b.add_edge(v, w);
      }
    }
    add("Q3", b.build(false));
  }
  {
    GraphBuilder b(4); // K4 minus an edge
    b.add_edge(0, 1);
    b.add_edge(0, 2);
    b.add_edge(0, 3);
    b.add_edge(1, 2);
    b.add_edge(1, 3);
    add("K4-e", b.build(false));
  }

  add("petersen", petersen());
  add("petersen-v", delete_vertex(petersen(), 0).graph);

  // Multigraph entries.
  {
    GraphBuilder b(3);
    b.add_edge(0, 1, 2);
    b.add_edge(1, 2);
    b.add_edge(0, 2);
    add("triangle+double", b.build());
  }
  {
    GraphBuilder b(2);
    b.add_edge(0, 1, 3);
    add("triple-edge", b.build());
  }
  {
    GraphBuilder b(4); // 4-cycle with both "horizontal" edges doubled
    b.add_edge(0, 1, 2);
    b.add_edge(1, 2);
    b.add_edge(2, 3, 2);
    b.add_edge(3, 0);
    add("C4+doubles", b.build());
  }
  {
    MultiGraph p = petersen();
    auto matchings = perfect_matchings(p);
    add("petersen+2M", double_one_factor(p, matchings.front()));
  }
  return out;
}

MultiGraph random_regular_graph(int n, int k, Rng& rng, bool require_connected) {
  if (n * k % 2 != 0 || k >= n || k < 0) throw GraphError("no k-regular graph on these parameters");
  std::vector<int> stubs(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n * k; ++i) stubs[i] = i / k;

  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
    bool ok = true;
    GraphBuilder b(n);
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v || seen[u][v]) {
        ok = false;
        break;
      }
      seen[u][v] = seen[v][u] = 1;
      b.add_edge(u, v);
    }
    if (!ok) continue;
    MultiGraph g = b.build(false);
    if (require_connected && !g.connected()) continue;
    return g;
  }
  throw GraphError("pairing model failed to produce a simple regular graph");
}

MultiGraph random_multigraph(int n, int m, Rng& rng) {
  GraphBuilder b(n);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> multd(1, 2);
  for (int i = 0; i < m; ++i) {
    int u = pick(rng), v = pick(rng);
    if (u == v) continue;
    b.add_edge(u, v, multd(rng));
  }
  return b.build();
}

} // namespace fewham
