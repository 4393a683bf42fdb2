#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fewham {

using Vertex = int;

// Names one parallel copy of an edge. Copies of a pair (u,v) are numbered
// 0..multiplicity-1; deleting copies renumbers the survivors.
struct EdgeRef {
  Vertex u = 0;
  Vertex v = 0;
  int copy = 0;

  EdgeRef() = default;
  EdgeRef(Vertex a, Vertex b, int c = 0) : u(a < b ? a : b), v(a < b ? b : a), copy(c) {}

  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// One parallel class: the unordered pair (u,v) with u < v and its multiplicity.
struct EdgeClass {
  Vertex u = 0;
  Vertex v = 0;
  int mult = 0;

  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Undirected loopless multigraph on dense vertex ids 0..n-1 with optional
// per-vertex role labels. Immutable after construction; build new values via
// GraphBuilder or the mutation helpers below.
class MultiGraph {
 public:
  MultiGraph() = default;

  int n() const { return n_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  const EdgeClass& edge_class(int idx) const { return classes_[idx]; }
  std::span<const EdgeClass> classes() const { return classes_; }

  // Incidence as (class index, far endpoint), sorted by class index.
  std::span<const std::pair<int, Vertex>> incident(Vertex v) const { return adj_[v]; }

  int multiplicity(Vertex u, Vertex v) const;
  std::optional<int> find_class(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return multiplicity(u, v) > 0; }

  int degree(Vertex v) const { return degree_[v]; }
  std::int64_t total_multiplicity() const { return total_mult_; }

  bool simple() const;
  bool connected() const;
  // k if every degree equals k, otherwise nullopt.
  std::optional<int> regularity() const;
  // All pairs with multiplicity >= 2.
  std::vector<std::pair<Vertex, Vertex>> doubled_pairs() const;
  // Distinct neighbors of v, ascending.
  std::vector<Vertex> neighbors(Vertex v) const;

  const std::string& label(Vertex v) const { return labels_[v]; }
  bool has_labels() const;
  // Lowest vertex carrying the given label, or nullopt.
  std::optional<Vertex> find_label(const std::string& tag) const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.n_ == b.n_ && a.classes_ == b.classes_ && a.labels_ == b.labels_;
  }

 private:
  friend class GraphBuilder;

  int n_ = 0;
  std::vector<EdgeClass> classes_;                       // sorted by (u, v)
  std::vector<std::vector<std::pair<int, Vertex>>> adj_; // per-vertex class incidences
  std::vector<int> degree_;                              // with multiplicity
  std::vector<std::string> labels_;
  std::int64_t total_mult_ = 0;
};

// Accumulates edges, validates, and produces an immutable MultiGraph.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n);
  explicit GraphBuilder(const MultiGraph& g);

  void add_edge(Vertex u, Vertex v, int count = 1);
  // Decrements multiplicity; throws GraphError if absent.
  void remove_edge(Vertex u, Vertex v, int count = 1);
  void set_label(Vertex v, std::string tag);
  int multiplicity(Vertex u, Vertex v) const;
  int vertex_count() const { return n_; }

  MultiGraph build(bool allow_parallel = true) const;

 private:
  int n_ = 0;
  std::vector<std::pair<std::pair<Vertex, Vertex>, int>> mult_; // unsorted accumulation
  std::vector<std::string> labels_;
};

// ---- mutation primitives -------------------------------------------------

MultiGraph build_graph(int n, std::span<const std::pair<Vertex, Vertex>> edges,
                       bool allow_parallel = false);

MultiGraph delete_edges(const MultiGraph& g, std::span<const EdgeRef> refs);

struct UnionResult {
  MultiGraph graph;
  int offset = 0; // H's vertex i maps to offset + i
};
UnionResult disjoint_union(const MultiGraph& g, const MultiGraph& h);

struct PathResult {
  MultiGraph graph;
  std::vector<Vertex> internal; // fresh vertices in path order from u to v
};
PathResult add_path(const MultiGraph& g, Vertex u, Vertex v, int length,
                    const std::string& role_tag = "", bool allow_parallel = true);

struct VertexDeletion {
  MultiGraph graph;
  std::vector<Vertex> old_to_new; // -1 for the removed vertex
};
VertexDeletion delete_vertex(const MultiGraph& g, Vertex v);

} // namespace fewham
