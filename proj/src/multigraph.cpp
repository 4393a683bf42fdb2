#include "fewham/multigraph.hpp"

#include <algorithm>
#include <map>

namespace fewham {

namespace {

void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n) {
    throw GraphError("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n) + ")");
  }
}

} // namespace

int MultiGraph::multiplicity(Vertex u, Vertex v) const {
  auto idx = find_class(u, v);
  return idx ? classes_[*idx].mult : 0;
}

std::optional<int> MultiGraph::find_class(Vertex u, Vertex v) const {
  if (u == v) return std::nullopt;
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(classes_.begin(), classes_.end(), std::pair(u, v),
                             [](const EdgeClass& c, const std::pair<Vertex, Vertex>& key) {
                               return std::pair(c.u, c.v) < key;
                             });
  if (it == classes_.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<int>(it - classes_.begin());
}

bool MultiGraph::simple() const {
  return std::all_of(classes_.begin(), classes_.end(),
                     [](const EdgeClass& c) { return c.mult <= 1; });
}

bool MultiGraph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (auto [ci, w] : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_;
}

std::optional<int> MultiGraph::regularity() const {
  if (n_ == 0) return std::nullopt;
  int k = degree_[0];
  for (int v = 1; v < n_; ++v) {
    if (degree_[v] != k) return std::nullopt;
  }
  return k;
}

std::vector<std::pair<Vertex, Vertex>> MultiGraph::doubled_pairs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (const auto& c : classes_) {
    if (c.mult >= 2) out.emplace_back(c.u, c.v);
  }
  return out;
}

std::vector<Vertex> MultiGraph::neighbors(Vertex v) const {
  std::vector<Vertex> out;
  out.reserve(adj_[v].size());
  for (auto [ci, w] : adj_[v]) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

bool MultiGraph::has_labels() const {
  return std::any_of(labels_.begin(), labels_.end(),
                     [](const std::string& s) { return !s.empty(); });
}

std::optional<Vertex> MultiGraph::find_label(const std::string& tag) const {
  for (Vertex v = 0; v < n_; ++v) {
    if (labels_[v] == tag) return v;
  }
  return std::nullopt;
}

GraphBuilder::GraphBuilder(int n) : n_(n), labels_(static_cast<size_t>(std::max(n, 0))) {
  if (n < 0) throw GraphError("negative vertex count");
}

GraphBuilder::GraphBuilder(const MultiGraph& g) : n_(g.n()) {
  labels_.resize(n_);
  for (Vertex v = 0; v < n_; ++v) labels_[v] = g.label(v);
  for (const auto& c : g.classes()) mult_.push_back({{c.u, c.v}, c.mult});
}

void GraphBuilder::add_edge(Vertex u, Vertex v, int count) {
  check_vertex(n_, u);
  check_vertex(n_, v);
  if (u == v) throw GraphError("loop at vertex " + std::to_string(u) + " rejected");
  if (count <= 0) throw GraphError("edge count must be positive");
  if (u > v) std::swap(u, v);
  mult_.push_back({{u, v}, count});
}

void GraphBuilder::remove_edge(Vertex u, Vertex v, int count) {
  check_vertex(n_, u);
  check_vertex(n_, v);
  if (u > v) std::swap(u, v);
  if (multiplicity(u, v) < count) {
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") has multiplicity " + std::to_string(multiplicity(u, v)) +
                     ", cannot remove " + std::to_string(count));
  }
  mult_.push_back({{u, v}, -count});
}

void GraphBuilder::set_label(Vertex v, std::string tag) {
  check_vertex(n_, v);
  labels_[v] = std::move(tag);
}

int GraphBuilder::multiplicity(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  int m = 0;
  for (const auto& [pair, cnt] : mult_) {
    if (pair == std::pair(u, v)) m += cnt;
  }
  return m;
}

MultiGraph GraphBuilder::build(bool allow_parallel) const {
  std::map<std::pair<Vertex, Vertex>, int> acc;
  for (const auto& [pair, cnt] : mult_) acc[pair] += cnt;

  MultiGraph g;
  g.n_ = n_;
  g.labels_ = labels_;
  g.adj_.assign(n_, {});
  g.degree_.assign(n_, 0);
  for (const auto& [pair, m] : acc) {
    if (m == 0) continue;
    if (m < 0) throw GraphError("negative multiplicity after removals");
    if (m > 1 && !allow_parallel) {
      throw GraphError("parallel edge (" + std::to_string(pair.first) + "," +
                       std::to_string(pair.second) + ") rejected");
    }
    int idx = static_cast<int>(g.classes_.size());
    g.classes_.push_back({pair.first, pair.second, m});
    g.adj_[pair.first].emplace_back(idx, pair.second);
    g.adj_[pair.second].emplace_back(idx, pair.first);
    g.degree_[pair.first] += m;
    g.degree_[pair.second] += m;
    g.total_mult_ += m;
  }
  return g;
}

MultiGraph build_graph(int n, std::span<const std::pair<Vertex, Vertex>> edges,
                       bool allow_parallel) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build(allow_parallel);
}

MultiGraph delete_edges(const MultiGraph& g, std::span<const EdgeRef> refs) {
  // Validate refs against the original graph: per pair, the stated copies
  // must be distinct and below the original multiplicity.
  std::map<std::pair<Vertex, Vertex>, std::vector<int>> per_pair;
  for (const EdgeRef& r : refs) {
    per_pair[{r.u, r.v}].push_back(r.copy);
  }
  GraphBuilder b(g);
  for (auto& [pair, copies] : per_pair) {
    int m = g.multiplicity(pair.first, pair.second);
    std::sort(copies.begin(), copies.end());
    if (std::adjacent_find(copies.begin(), copies.end()) != copies.end()) {
      throw GraphError("duplicate copy index for edge (" + std::to_string(pair.first) + "," +
                       std::to_string(pair.second) + ")");
    }
    for (int c : copies) {
      if (c < 0 || c >= m) {
        throw GraphError("edge (" + std::to_string(pair.first) + "," +
                         std::to_string(pair.second) + ") copy " + std::to_string(c) +
                         " does not exist (multiplicity " + std::to_string(m) + ")");
      }
    }
    b.remove_edge(pair.first, pair.second, static_cast<int>(copies.size()));
  }
  return b.build();
}

UnionResult disjoint_union(const MultiGraph& g, const MultiGraph& h) {
  int offset = g.n();
  GraphBuilder b(g.n() + h.n());
  for (Vertex v = 0; v < g.n(); ++v) b.set_label(v, g.label(v));
  for (const auto& c : g.classes()) b.add_edge(c.u, c.v, c.mult);
  for (Vertex v = 0; v < h.n(); ++v) {
    const std::string& tag = h.label(v);
    b.set_label(offset + v, tag.empty() ? tag : tag + "'");
  }
  for (const auto& c : h.classes()) b.add_edge(offset + c.u, offset + c.v, c.mult);
  return {b.build(), offset};
}

PathResult add_path(const MultiGraph& g, Vertex u, Vertex v, int length,
                    const std::string& role_tag, bool allow_parallel) {
  if (u == v) throw GraphError("path endpoints must differ");
  if (length < 1) throw GraphError("path length must be >= 1");
  if (length == 1 && g.multiplicity(u, v) >= 1 && !allow_parallel) {
    throw GraphError("length-1 path would duplicate edge (" + std::to_string(u) + "," +
                     std::to_string(v) + ")");
  }
  check_vertex(g.n(), u);
  check_vertex(g.n(), v);

  GraphBuilder b(g.n() + length - 1);
  for (Vertex w = 0; w < g.n(); ++w) b.set_label(w, g.label(w));
  for (const auto& c : g.classes()) b.add_edge(c.u, c.v, c.mult);

  std::vector<Vertex> internal;
  Vertex prev = u;
  for (int i = 1; i < length; ++i) {
    Vertex fresh = g.n() + i - 1;
    internal.push_back(fresh);
    if (!role_tag.empty()) b.set_label(fresh, role_tag + "." + std::to_string(i));
    b.add_edge(prev, fresh);
    prev = fresh;
  }
  b.add_edge(prev, v);
  return {b.build(), std::move(internal)};
}

VertexDeletion delete_vertex(const MultiGraph& g, Vertex v) {
  check_vertex(g.n(), v);
  std::vector<Vertex> old_to_new(g.n(), -1);
  int next = 0;
  for (Vertex w = 0; w < g.n(); ++w) {
    if (w != v) old_to_new[w] = next++;
  }
  GraphBuilder b(g.n() - 1);
  for (Vertex w = 0; w < g.n(); ++w) {
    if (w != v) b.set_label(old_to_new[w], g.label(w));
  }
  for (const auto& c : g.classes()) {
    if (c.u == v || c.v == v) continue;
    b.add_edge(old_to_new[c.u], old_to_new[c.v], c.mult);
  }
  return {b.build(), std::move(old_to_new)};
}

} // namespace fewham
