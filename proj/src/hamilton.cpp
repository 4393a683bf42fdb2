#include "fewham/hamilton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace fewham {

namespace {

constexpr int kDpThreshold = 40; // above this, plain counting switches to the dp

bool needs_backtrack(const CountOptions& opt) {
  return opt.retain_cycles || opt.stop_at_first || !opt.forced_include.empty();
}

} // namespace

HamiltonReport count_hamiltonian_cycles(const MultiGraph& g, const CountOptions& opt) {
  switch (opt.engine) {
    case CountEngine::kBacktrack:
      return detail::count_backtrack(g, opt);
    case CountEngine::kInterfaceDp:
      if (needs_backtrack(opt)) {
        throw GraphError("interface dp supports plain counting only "
                         "(no retained cycles, forced edges, or early stop)");
      }
      return detail::count_interface_dp(g, opt);
    case CountEngine::kAuto:
    default:
      if (needs_backtrack(opt) || g.n() < kDpThreshold) return detail::count_backtrack(g, opt);
      return detail::count_interface_dp(g, opt);
  }
}

BigCount brute_force_count(const MultiGraph& g) {
  int n = g.n();
  if (n > 11) throw GraphError("brute_force_count limited to n <= 11");
  if (n < 3) return 0;

  std::vector<Vertex> perm(n - 1);
  std::iota(perm.begin(), perm.end(), 1);
  BigCount twice = 0;
  do {
    BigCount w = g.multiplicity(0, perm[0]);
    if (w == 0) continue;
    for (int i = 0; i + 1 < n - 1 && w > 0; ++i) {
      w *= static_cast<unsigned>(g.multiplicity(perm[i], perm[i + 1]));
    }
    if (w == 0) continue;
    w *= static_cast<unsigned>(g.multiplicity(perm[n - 2], 0));
    twice += w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return twice / 2; // each undirected cycle appears in both orientations
}

BigCount count_through_edge(const MultiGraph& g, const EdgeRef& e, const CountOptions& opt) {
  if (!g.has_edge(e.u, e.v) || e.copy < 0 || e.copy >= g.multiplicity(e.u, e.v)) {
    throw GraphError("count_through_edge: edge does not exist");
  }
  CountOptions forced = opt;
  forced.forced_include.push_back(e);
  forced.engine = CountEngine::kBacktrack;
  return detail::count_backtrack(g, forced).count;
}

HamPathResult has_hamiltonian_path(const MultiGraph& g, Vertex u, Vertex v) {
  if (u == v) throw GraphError("hamiltonian path endpoints must differ");
  if (g.n() < 2) return {};

  // Apex reduction: cycles of g + x through xu and xv are exactly the
  // spanning u-v paths of g.
  GraphBuilder b(g.n() + 1);
  for (const auto& c : g.classes()) b.add_edge(c.u, c.v, c.mult);
  Vertex apex = g.n();
  b.add_edge(apex, u);
  b.add_edge(apex, v);
  MultiGraph aug = b.build();

  CountOptions opt;
  opt.stop_at_first = true;
  opt.retain_cycles = true;
  opt.forced_include = {EdgeRef(apex, u), EdgeRef(apex, v)};
  HamiltonReport rep = detail::count_backtrack(aug, opt);
  if (rep.count == 0) return {};

  HamPathResult out;
  out.exists = true;
  const auto& cyc = rep.cycles.front().vertices;
  auto it = std::find(cyc.begin(), cyc.end(), apex);
  out.path.insert(out.path.end(), it + 1, cyc.end());
  out.path.insert(out.path.end(), cyc.begin(), it);
  if (!out.path.empty() && out.path.front() != u) {
    std::reverse(out.path.begin(), out.path.end());
  }
  return out;
}

std::vector<EdgeRef> TwoFactor::all_edges() const {
  std::vector<EdgeRef> out;
  for (const auto& comp : components) out.insert(out.end(), comp.begin(), comp.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Splits a chosen usage map (class -> 1 or 2) into cycle components.
TwoFactor decompose_two_factor(const MultiGraph& g, const std::vector<int>& usage) {
  int n = g.n();
  TwoFactor tf;
  std::vector<char> done(n, 0);
  for (Vertex start = 0; start < n; ++start) {
    if (done[start]) continue;
    // Doubled usage forms a 2-cycle component.
    bool two_cycle = false;
    for (auto [cls, w] : g.incident(start)) {
      if (usage[cls] == 2) {
        const EdgeClass& c = g.edge_class(cls);
        tf.components.push_back({EdgeRef(c.u, c.v, 0), EdgeRef(c.u, c.v, 1)});
        tf.component_lengths.push_back(2);
        done[c.u] = done[c.v] = 1;
        two_cycle = true;
        break;
      }
    }
    if (two_cycle) continue;
    std::vector<EdgeRef> comp;
    Vertex prev = -1, cur = start;
    do {
      done[cur] = 1;
      for (auto [cls, w] : g.incident(cur)) {
        if (usage[cls] == 1 && w != prev) {
          const EdgeClass& c = g.edge_class(cls);
          comp.push_back(EdgeRef(c.u, c.v, 0));
          prev = cur;
          cur = w;
          break;
        }
      }
    } while (cur != start);
    tf.components.push_back(std::move(comp));
    tf.component_lengths.push_back(static_cast<int>(tf.components.back().size()));
  }
  return tf;
}

struct TwoFactorSearch {
  const MultiGraph& g;
  std::optional<std::size_t> limit;
  std::vector<int> usage;
  std::vector<int> deg;
  std::vector<int> last_class; // last class index incident to each vertex
  std::vector<int> remaining; // per vertex: usable degree among classes >= idx
  std::vector<TwoFactor> found;
  bool truncated = false;
  // Early-stop predicate; returns true to stop the whole search.
  std::function<bool(const TwoFactor&)> sink;

  explicit TwoFactorSearch(const MultiGraph& gg) : g(gg) {}

  bool run() {
    int n = g.n();
    usage.assign(g.class_count(), 0);
    deg.assign(n, 0);
    last_class.assign(n, -1);
    remaining.assign(n, 0);
    for (int i = 0; i < g.class_count(); ++i) {
      const EdgeClass& c = g.edge_class(i);
      last_class[c.u] = std::max(last_class[c.u], i);
      last_class[c.v] = std::max(last_class[c.v], i);
      int usable = std::min(2, c.mult);
      remaining[c.u] += usable;
      remaining[c.v] += usable;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (remaining[v] < 2) return false; // vertex cannot reach degree 2
    }
    return dfs(0);
  }

  bool dfs(int idx) {
    if (idx == g.class_count()) {
      TwoFactor tf = decompose_two_factor(g, usage);
      if (sink) return sink(tf);
      found.push_back(std::move(tf));
      if (limit && found.size() >= *limit) {
        truncated = true;
        return true;
      }
      return false;
    }
    const EdgeClass& c = g.edge_class(idx);
    int usable = std::min(2, c.mult);
    remaining[c.u] -= usable;
    remaining[c.v] -= usable;
    bool stop = false;
    for (int take = 0; take <= usable && !stop; ++take) {
      if (deg[c.u] + take > 2 || deg[c.v] + take > 2) break;
      if (deg[c.u] + take + remaining[c.u] < 2) continue;
      if (deg[c.v] + take + remaining[c.v] < 2) continue;
      usage[idx] = take;
      deg[c.u] += take;
      deg[c.v] += take;
      bool complete_u = last_class[c.u] == idx;
      bool complete_v = last_class[c.v] == idx;
      if ((!complete_u || deg[c.u] == 2) && (!complete_v || deg[c.v] == 2)) {
        stop = dfs(idx + 1);
      }
      deg[c.u] -= take;
      deg[c.v] -= take;
      usage[idx] = 0;
    }
    remaining[c.u] += usable;
    remaining[c.v] += usable;
    return stop;
  }
};

} // namespace

TwoFactorList enumerate_two_factors(const MultiGraph& g, std::optional<std::size_t> limit) {
  TwoFactorList out;
  if (g.n() == 0) return out;
  TwoFactorSearch search(g);
  search.limit = limit;
  search.run();
  out.factors = std::move(search.found);
  out.truncated = search.truncated;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const TwoFactor& a, const TwoFactor& b) { return a.all_edges() < b.all_edges(); });
  return out;
}

std::optional<TwoFactor> exists_split_two_factor(const MultiGraph& g, const EdgeRef& e,
                                                 const EdgeRef& f) {
  if (e == f) throw GraphError("exists_split_two_factor requires two distinct edges");
  // Parallel copies of one pair share both endpoints and can never sit in
  // vertex-disjoint components.
  if (e.u == f.u && e.v == f.v) return std::nullopt;
  std::optional<TwoFactor> result;
  auto contains_pair = [](const std::vector<EdgeRef>& comp, const EdgeRef& r) {
    return std::any_of(comp.begin(), comp.end(),
                       [&](const EdgeRef& x) { return x.u == r.u && x.v == r.v; });
  };
  TwoFactorSearch search(g);
  search.sink = [&](const TwoFactor& tf) {
    if (tf.components.size() != 2) return false;
    bool split = (contains_pair(tf.components[0], e) && contains_pair(tf.components[1], f)) ||
                 (contains_pair(tf.components[0], f) && contains_pair(tf.components[1], e));
    if (split) {
      result = tf;
      return true;
    }
    return false;
  };
  search.run();
  return result;
}

std::optional<std::string> check_two_factor(const MultiGraph& g, const TwoFactor& tf) {
  std::vector<int> deg(g.n(), 0);
  std::map<std::pair<Vertex, Vertex>, int> used;
  for (const auto& comp : tf.components) {
    if (comp.size() < 2) return "component shorter than a 2-cycle";
    for (const EdgeRef& e : comp) {
      if (!g.has_edge(e.u, e.v)) return "edge not in graph";
      ++used[{e.u, e.v}];
      ++deg[e.u];
      ++deg[e.v];
    }
  }
  for (auto& [pair, k] : used) {
    if (k > g.multiplicity(pair.first, pair.second)) return "edge used beyond its multiplicity";
  }
  for (Vertex v = 0; v < g.n(); ++v) {
    if (deg[v] != 2) return "vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]);
  }
  return std::nullopt;
}

} // namespace fewham
