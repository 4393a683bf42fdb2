#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <thread>

#include "fewham/hamilton.hpp"

namespace fewham::detail {

namespace {

using Clock = std::chrono::steady_clock;

enum class Status : std::int8_t { kUndecided, kIncluded, kExcluded };
enum class StepResult { kOk, kFail, kSolution };

constexpr int kTaskFrontierDepth = 16;
constexpr std::uint64_t kBudgetCheckMask = 1023;

struct Shared {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  std::atomic<bool> found{false};
  std::optional<std::uint64_t> node_budget;
  std::optional<Clock::time_point> deadline;
  bool stop_at_first = false;
};

// One decision prefix: branch classes with include/exclude choices.
struct Task {
  std::vector<std::pair<int, bool>> decisions;
};

class Searcher {
 public:
  Searcher(const MultiGraph& g, const CountOptions& opt, Shared& shared)
      : g_(g), n_(g.n()), m_(g.class_count()), shared_(shared), retain_(opt.retain_cycles) {
    cu_.resize(m_);
    cv_.resize(m_);
    weight_.resize(m_);
    copy_override_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const EdgeClass& c = g.edge_class(i);
      cu_[i] = c.u;
      cv_[i] = c.v;
      weight_[i] = c.mult;
    }
    status_.assign(m_, Status::kUndecided);
    inc_deg_.assign(n_, 0);
    und_deg_.assign(n_, 0);
    partner_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) {
      partner_[v] = v;
      und_deg_[v] = static_cast<int>(g.incident(v).size());
    }
    seen_.assign(n_, 0);
  }

  // Applies forced copies and root propagation. Returns false when no further
  // search is needed: either a contradiction, or the forced state already
  // completed the unique cycle (then count() holds it).
  bool apply_forced(std::span<const EdgeRef> forced) {
    for (const EdgeRef& e : forced) {
      auto ci = g_.find_class(e.u, e.v);
      if (!ci) throw GraphError("forced edge (" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ") does not exist");
      if (e.copy < 0 || e.copy >= g_.edge_class(*ci).mult) {
        throw GraphError("forced edge copy " + std::to_string(e.copy) + " does not exist");
      }
      if (copy_override_[*ci] >= 0 && copy_override_[*ci] != e.copy) return false;
      if (copy_override_[*ci] < 0) {
        copy_override_[*ci] = e.copy;
        weight_[*ci] = 1;
        StepResult r = include_class(*ci);
        if (r != StepResult::kOk) return false;
      }
    }
    StepResult r = propagate();
    if (r != StepResult::kOk) return false;
    return spanning_connected();
  }

  // Replays a recorded decision prefix; the prefix never hits a terminal state.
  void replay(const Task& t) {
    for (auto [cls, include] : t.decisions) {
      StepResult r = include ? decide_include(cls) : decide_exclude(cls);
      (void)r;
      assert(r == StepResult::kOk);
    }
  }

  void dfs() {
    ++local_nodes_;
    if (should_stop()) return;
    int cls = pick_branch_class();
    if (cls < 0) return; // fully decided states always terminate via include
    std::size_t mark = trail_.size();
    if (decide_include(cls) == StepResult::kOk) dfs();
    unwind(mark);
    if (should_stop()) return;
    if (decide_exclude(cls) == StepResult::kOk) dfs();
    unwind(mark);
  }

  // Bounded dfs that emits subtree tasks at the frontier depth. Frontier
  // nodes are not counted here; the task dfs counts them, so nodes_expanded
  // is identical for every worker count.
  void dfs_collect(int depth, std::vector<std::pair<int, bool>>& prefix, std::vector<Task>& out) {
    if (depth >= kTaskFrontierDepth) {
      out.push_back({prefix});
      return;
    }
    ++local_nodes_;
    int cls = pick_branch_class();
    if (cls < 0) return;
    std::size_t mark = trail_.size();
    if (decide_include(cls) == StepResult::kOk) {
      prefix.emplace_back(cls, true);
      dfs_collect(depth + 1, prefix, out);
      prefix.pop_back();
    }
    unwind(mark);
    if (decide_exclude(cls) == StepResult::kOk) {
      prefix.emplace_back(cls, false);
      dfs_collect(depth + 1, prefix, out);
      prefix.pop_back();
    }
    unwind(mark);
  }

  BigCount count() const { return count_; }
  std::uint64_t nodes() const { return local_nodes_; }
  std::vector<HamiltonCycle>& cycles() { return cycles_; }
  void flush_nodes() {
    shared_.nodes.fetch_add(local_nodes_ - flushed_nodes_, std::memory_order_relaxed);
    flushed_nodes_ = local_nodes_;
  }

 private:
  struct TrailEntry {
    std::int8_t kind; // 0 include, 1 exclude
    int cls;
    Vertex pu, pv;
    Vertex old_ppu, old_ppv;
  };

  bool should_stop() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    if ((local_nodes_ & kBudgetCheckMask) == 0) {
      flush_nodes();
      if (shared_.node_budget &&
          shared_.nodes.load(std::memory_order_relaxed) > *shared_.node_budget) {
        shared_.exhausted.store(true);
        shared_.stop.store(true);
        return true;
      }
      if (shared_.deadline && Clock::now() > *shared_.deadline) {
        shared_.exhausted.store(true);
        shared_.stop.store(true);
        return true;
      }
    }
    return false;
  }

  StepResult include_class(int cls) {
    if (status_[cls] == Status::kExcluded) return StepResult::kFail;
    if (status_[cls] == Status::kIncluded) return StepResult::kOk;
    Vertex u = cu_[cls], v = cv_[cls];
    if (inc_deg_[u] >= 2 || inc_deg_[v] >= 2) return StepResult::kFail;
    if (partner_[u] == v) {
      // Closing a chain into a cycle: only the spanning closure survives.
      if (included_ + 1 == n_) {
        record_solution(cls);
        return StepResult::kSolution;
      }
      return StepResult::kFail;
    }
    Vertex pu = partner_[u], pv = partner_[v];
    trail_.push_back({0, cls, pu, pv, partner_[pu], partner_[pv]});
    status_[cls] = Status::kIncluded;
    ++included_;
    partner_[pu] = pv;
    partner_[pv] = pu;
    ++inc_deg_[u];
    ++inc_deg_[v];
    --und_deg_[u];
    --und_deg_[v];
    worklist_.push_back(u);
    worklist_.push_back(v);
    return StepResult::kOk;
  }

  StepResult exclude_class(int cls) {
    if (status_[cls] == Status::kIncluded) return StepResult::kFail;
    if (status_[cls] == Status::kExcluded) return StepResult::kOk;
    Vertex u = cu_[cls], v = cv_[cls];
    trail_.push_back({1, cls, 0, 0, 0, 0});
    status_[cls] = Status::kExcluded;
    --und_deg_[u];
    --und_deg_[v];
    worklist_.push_back(u);
    worklist_.push_back(v);
    return StepResult::kOk;
  }

  StepResult propagate() {
    while (!worklist_.empty()) {
      Vertex v = worklist_.back();
      worklist_.pop_back();
      int inc = inc_deg_[v];
      int avail = inc + und_deg_[v];
      if (avail < 2) return StepResult::kFail;
      if (inc == 2 && und_deg_[v] > 0) {
        for (auto [cls, w] : g_.incident(v)) {
          if (status_[cls] == Status::kUndecided) {
            if (exclude_class(cls) == StepResult::kFail) return StepResult::kFail;
          }
        }
      } else if (inc < 2 && avail == 2) {
        for (auto [cls, w] : g_.incident(v)) {
          if (status_[cls] == Status::kUndecided) {
            StepResult r = include_class(cls);
            if (r != StepResult::kOk) return r;
          }
        }
      }
    }
    return StepResult::kOk;
  }

  StepResult decide_include(int cls) {
    StepResult r = include_class(cls);
    if (r == StepResult::kOk) r = propagate();
    if (r == StepResult::kOk && !spanning_connected()) r = StepResult::kFail;
    if (r != StepResult::kOk) worklist_.clear();
    return r;
  }

  StepResult decide_exclude(int cls) {
    StepResult r = exclude_class(cls);
    if (r == StepResult::kOk) r = propagate();
    if (r == StepResult::kOk && !spanning_connected()) r = StepResult::kFail;
    if (r != StepResult::kOk) worklist_.clear();
    return r;
  }

  // The non-excluded graph must still span all vertices in one component.
  bool spanning_connected() {
    if (n_ == 0) return true;
    std::fill(seen_.begin(), seen_.end(), 0);
    bfs_.clear();
    bfs_.push_back(0);
    seen_[0] = 1;
    int reached = 1;
    while (!bfs_.empty()) {
      Vertex v = bfs_.back();
      bfs_.pop_back();
      for (auto [cls, w] : g_.incident(v)) {
        if (status_[cls] != Status::kExcluded && !seen_[w]) {
          seen_[w] = 1;
          ++reached;
          bfs_.push_back(w);
        }
      }
    }
    return reached == n_;
  }

  int pick_branch_class() {
    int best_v = -1;
    int best_tier = 3;
    int best_und = 1 << 30;
    for (Vertex v = 0; v < n_; ++v) {
      if (und_deg_[v] == 0 || inc_deg_[v] >= 2) continue;
      int tier = inc_deg_[v] == 1 ? 0 : 1;
      if (tier < best_tier || (tier == best_tier && und_deg_[v] < best_und)) {
        best_tier = tier;
        best_und = und_deg_[v];
        best_v = v;
      }
    }
    if (best_v < 0) return -1;
    for (auto [cls, w] : g_.incident(best_v)) {
      if (status_[cls] == Status::kUndecided) return cls;
    }
    return -1;
  }

  void unwind(std::size_t mark) {
    while (trail_.size() > mark) {
      const TrailEntry& t = trail_.back();
      Vertex u = cu_[t.cls], v = cv_[t.cls];
      if (t.kind == 0) {
        status_[t.cls] = Status::kUndecided;
        --included_;
        partner_[t.pu] = t.old_ppu;
        partner_[t.pv] = t.old_ppv;
        --inc_deg_[u];
        --inc_deg_[v];
        ++und_deg_[u];
        ++und_deg_[v];
      } else {
        status_[t.cls] = Status::kUndecided;
        ++und_deg_[u];
        ++und_deg_[v];
      }
      trail_.pop_back();
    }
  }

  void record_solution(int closing_cls) {
    BigCount weight = 1;
    for (int i = 0; i < m_; ++i) {
      if (status_[i] == Status::kIncluded) weight *= static_cast<unsigned>(weight_[i]);
    }
    weight *= static_cast<unsigned>(weight_[closing_cls]);
    count_ += weight;
    if (retain_) reconstruct_cycles(closing_cls);
    if (shared_.stop_at_first) {
      shared_.found.store(true);
      shared_.stop.store(true);
    }
  }

  void reconstruct_cycles(int closing_cls) {
    // Cycle classes = included classes plus the closing one.
    std::vector<int> at(n_ * 2, -1);
    auto push = [&](Vertex v, int cls) {
      at[v * 2 + (at[v * 2] >= 0 ? 1 : 0)] = cls;
    };
    for (int i = 0; i < m_; ++i) {
      if (status_[i] == Status::kIncluded || i == closing_cls) {
        push(cu_[i], i);
        push(cv_[i], i);
      }
    }
    std::vector<Vertex> seq;
    std::vector<int> cls_seq;
    seq.reserve(n_);
    Vertex start = 0;
    int c0 = at[0], c1 = at[1];
    Vertex n0 = cu_[c0] == 0 ? cv_[c0] : cu_[c0];
    Vertex n1 = cu_[c1] == 0 ? cv_[c1] : cu_[c1];
    int first_cls = n0 < n1 ? c0 : c1;
    Vertex prev = start;
    int cur_cls = first_cls;
    for (int step = 0; step < n_; ++step) {
      seq.push_back(prev);
      cls_seq.push_back(cur_cls);
      Vertex nxt = cu_[cur_cls] == prev ? cv_[cur_cls] : cu_[cur_cls];
      int ca = at[nxt * 2], cb = at[nxt * 2 + 1];
      int next_cls = (ca == cur_cls) ? cb : ca;
      prev = nxt;
      cur_cls = next_cls;
    }
    // Expand parallel-copy choices into distinct cycles.
    std::vector<int> copies(n_, 0);
    expand_copies(seq, cls_seq, copies, 0);
  }

  void expand_copies(const std::vector<Vertex>& seq, const std::vector<int>& cls_seq,
                     std::vector<int>& copies, int pos) {
    if (pos == n_) {
      cycles_.push_back({seq, copies});
      return;
    }
    int cls = cls_seq[pos];
    if (copy_override_[cls] >= 0) {
      copies[pos] = copy_override_[cls];
      expand_copies(seq, cls_seq, copies, pos + 1);
      return;
    }
    for (int k = 0; k < weight_[cls]; ++k) {
      copies[pos] = k;
      expand_copies(seq, cls_seq, copies, pos + 1);
    }
  }

  const MultiGraph& g_;
  int n_;
  int m_;
  Shared& shared_;
  bool retain_;

  std::vector<Vertex> cu_, cv_;
  std::vector<int> weight_;
  std::vector<int> copy_override_;
  std::vector<Status> status_;
  std::vector<int> inc_deg_, und_deg_;
  std::vector<Vertex> partner_;
  std::vector<TrailEntry> trail_;
  std::vector<Vertex> worklist_;
  std::vector<char> seen_;
  std::vector<Vertex> bfs_;
  int included_ = 0;

  BigCount count_ = 0;
  std::uint64_t local_nodes_ = 0;
  std::uint64_t flushed_nodes_ = 0;
  std::vector<HamiltonCycle> cycles_;
};

} // namespace

HamiltonReport count_backtrack(const MultiGraph& g, const CountOptions& opt) {
  auto t0 = Clock::now();
  HamiltonReport report;
  report.engine_used = CountEngine::kBacktrack;
  if (g.n() < 3) {
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
    return report;
  }

  Shared shared;
  shared.node_budget = opt.node_budget;
  shared.stop_at_first = opt.stop_at_first;
  if (opt.time_budget) shared.deadline = t0 + *opt.time_budget;

  Searcher root(g, opt, shared);
  bool feasible = root.apply_forced(opt.forced_include);
  if (!feasible) {
    report.count = root.count(); // forced edges may already complete a cycle
    report.cycles = std::move(root.cycles());
    report.nodes_expanded = root.nodes();
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
    return report;
  }

  int workers = std::max(1, opt.workers);
  if (workers == 1) {
    root.dfs();
    root.flush_nodes();
    report.count = root.count();
    report.cycles = std::move(root.cycles());
  } else {
    // Deterministic frontier split: the task list depends only on the graph
    // and options, never on the worker count.
    std::vector<Task> tasks;
    std::vector<std::pair<int, bool>> prefix;
    root.dfs_collect(0, prefix, tasks);
    root.flush_nodes();
    BigCount total = root.count();
    std::vector<HamiltonCycle> all_cycles = std::move(root.cycles());

    std::atomic<std::size_t> next{0};
    std::vector<BigCount> counts(workers, 0);
    std::vector<std::vector<HamiltonCycle>> cycle_parts(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers && !tasks.empty(); ++w) {
      threads.emplace_back([&, w] {
        while (!shared.stop.load(std::memory_order_relaxed)) {
          std::size_t idx = next.fetch_add(1);
          if (idx >= tasks.size()) break;
          Searcher task_state(g, opt, shared);
          bool tok = task_state.apply_forced(opt.forced_include);
          assert(tok);
          (void)tok;
          task_state.replay(tasks[idx]);
          task_state.dfs();
          task_state.flush_nodes();
          counts[w] += task_state.count();
          auto& cyc = task_state.cycles();
          cycle_parts[w].insert(cycle_parts[w].end(), cyc.begin(), cyc.end());
        }
      });
    }
    for (auto& t : threads) t.join();
    for (int w = 0; w < workers; ++w) {
      total += counts[w];
      all_cycles.insert(all_cycles.end(), cycle_parts[w].begin(), cycle_parts[w].end());
    }
    report.count = total;
    report.cycles = std::move(all_cycles);
  }

  if (opt.retain_cycles) std::sort(report.cycles.begin(), report.cycles.end());
  report.nodes_expanded = shared.nodes.load();
  report.budget_exhausted = shared.exhausted.load();
  if (shared.stop_at_first && shared.found.load()) report.budget_exhausted = false;
  report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  return report;
}

} // namespace fewham::detail
