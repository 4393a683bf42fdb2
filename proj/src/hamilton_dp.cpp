#include <algorithm>
#include <chrono>
#include <cstring>
#include <unordered_map>

#include "fewham/hamilton.hpp"

namespace fewham::detail {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint8_t kDeg0 = 0;
constexpr std::uint8_t kDeg2 = 255;
constexpr std::size_t kLayerStateCap = 4'000'000;

struct VecHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::uint8_t b : v) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return h;
  }
};

using StateMap = std::unordered_map<std::vector<std::uint8_t>, BigCount, VecHash>;

// Greedy elimination order keeping the active boundary small: repeatedly pick
// the unplaced vertex minimizing the resulting boundary, ties by id. Vertices
// not touching the boundary rank behind ones that do.
std::vector<Vertex> boundary_order(const MultiGraph& g) {
  int n = g.n();
  std::vector<char> placed(n, 0);
  std::vector<int> unplaced_nb(n, 0); // for placed vertices: distinct unplaced neighbors
  std::vector<Vertex> order;
  order.reserve(n);
  int boundary = 0;

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_key = 1L << 60;
    for (Vertex w = 0; w < n; ++w) {
      if (placed[w]) continue;
      int placed_nb = 0;
      int retiring = 0;
      for (auto [cls, x] : g.incident(w)) {
        if (placed[x]) {
          ++placed_nb;
          if (unplaced_nb[x] == 1) ++retiring;
        }
      }
      int stays = (static_cast<int>(g.incident(w).size()) - placed_nb) > 0 ? 1 : 0;
      long key = boundary - retiring + stays;
      if (step > 0 && placed_nb == 0) key += 1L << 40;
      if (key < best_key) {
        best_key = key;
        best = w;
      }
    }
    placed[best] = 1;
    order.push_back(best);
    int future = 0;
    for (auto [cls, x] : g.incident(best)) {
      if (placed[x]) {
        if (--unplaced_nb[x] == 0) --boundary;
      } else {
        ++future;
      }
    }
    unplaced_nb[best] = future;
    if (future > 0) ++boundary;
  }
  return order;
}

} // namespace

HamiltonReport count_interface_dp(const MultiGraph& g, const CountOptions& opt) {
  auto t0 = Clock::now();
  HamiltonReport report;
  report.engine_used = CountEngine::kInterfaceDp;
  int n = g.n();
  if (n < 3 || !g.connected()) {
    if (n >= 3 && !g.connected()) report.count = 0;
    report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
    return report;
  }

  std::vector<Vertex> order = boundary_order(g);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  std::uint64_t state_budget = opt.node_budget.value_or(200'000'000ull);
  std::uint64_t processed = 0;
  BigCount answer = 0;

  // Active set before step i: placed vertices with a neighbor at position >= i.
  std::vector<Vertex> active; // sorted by vertex id
  StateMap states;
  states[{}] = 1;

  std::vector<int> slot_of(n, -1);

  for (int i = 0; i < n && !report.budget_exhausted; ++i) {
    Vertex w = order[i];
    bool final_step = (i == n - 1);

    // Classes from w to already-placed vertices, as (slot, weight).
    std::vector<std::pair<int, int>> nb;
    for (auto [cls, x] : g.incident(w)) {
      if (pos[x] < i) nb.emplace_back(slot_of[x], g.edge_class(cls).mult);
    }
    std::sort(nb.begin(), nb.end());

    // Active set after this step, and which old slots (plus w) retire now.
    std::vector<Vertex> active_next;
    for (Vertex v : active) {
      bool future = false;
      for (auto [cls, x] : g.incident(v)) {
        if (pos[x] > i) future = true;
      }
      if (future) active_next.push_back(v);
    }
    bool w_active = false;
    for (auto [cls, x] : g.incident(w)) {
      if (pos[x] > i) w_active = true;
    }
    if (w_active) {
      active_next.push_back(w);
      std::sort(active_next.begin(), active_next.end());
    }

    int old_slots = static_cast<int>(active.size());
    // Old slot -> new slot (-1 when retiring); w gets its own new slot or -1.
    std::vector<int> remap(old_slots + 1, -1);
    for (int s = 0; s < old_slots; ++s) {
      auto it = std::lower_bound(active_next.begin(), active_next.end(), active[s]);
      if (it != active_next.end() && *it == active[s]) {
        remap[s] = static_cast<int>(it - active_next.begin());
      }
    }
    if (w_active) {
      auto it = std::lower_bound(active_next.begin(), active_next.end(), w);
      remap[old_slots] = static_cast<int>(it - active_next.begin());
    }

    StateMap next_states;
    std::vector<std::uint8_t> scratch(old_slots + 1);
    std::vector<std::uint8_t> emitted(active_next.size());

    auto emit = [&](const std::vector<std::uint8_t>& codes, BigCount cnt) {
      // Retiring slots must be saturated; survivors renumber pair ids by
      // first occurrence over the new slot order.
      for (int s = 0; s <= old_slots; ++s) {
        if (remap[s] < 0 && codes[s] != kDeg2) return;
      }
      std::fill(emitted.begin(), emitted.end(), 0);
      for (int s = 0; s <= old_slots; ++s) {
        if (remap[s] >= 0) emitted[remap[s]] = codes[s];
      }
      std::uint8_t pair_map[256];
      std::memset(pair_map, 0, sizeof(pair_map));
      std::uint8_t fresh = 1;
      for (auto& c : emitted) {
        if (c != kDeg0 && c != kDeg2) {
          if (pair_map[c] == 0) pair_map[c] = fresh++;
          c = pair_map[c];
        }
      }
      auto [it, inserted] = next_states.try_emplace(emitted, cnt);
      if (!inserted) it->second += cnt;
    };

    for (const auto& [codes, cnt] : states) {
      ++processed;
      if (processed > state_budget || next_states.size() > kLayerStateCap) {
        report.budget_exhausted = true;
        break;
      }
      // Choice: w takes no edge into the placed region.
      std::copy(codes.begin(), codes.end(), scratch.begin());
      scratch[old_slots] = kDeg0;
      if (!final_step) emit(scratch, cnt);

      // One edge to slot s.
      for (auto [s, mult] : nb) {
        std::uint8_t cx = codes[s];
        if (cx == kDeg2) continue;
        std::copy(codes.begin(), codes.end(), scratch.begin());
        if (cx == kDeg0) {
          // Fresh chain w -- x; give it a temporary id unused by the state.
          scratch[s] = 254;
          scratch[old_slots] = 254;
        } else {
          scratch[s] = kDeg2;
          scratch[old_slots] = cx; // w inherits x's chain end
        }
        if (!final_step) emit(scratch, cnt * static_cast<unsigned>(mult));
      }

      // Two edges, to distinct slots s < t.
      for (std::size_t a = 0; a < nb.size(); ++a) {
        auto [s, ms] = nb[a];
        std::uint8_t cx = codes[s];
        if (cx == kDeg2) continue;
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
          auto [t, mt] = nb[b];
          std::uint8_t cz = codes[t];
          if (cz == kDeg2) continue;
          BigCount weight = cnt * static_cast<unsigned>(ms) * static_cast<unsigned>(mt);
          if (cx != kDeg0 && cx == cz) {
            // x and z are the two ends of one chain: cycle closure.
            if (!final_step) continue;
            bool complete = true;
            for (int q = 0; q < old_slots; ++q) {
              if (q != s && q != t && codes[q] != kDeg2) complete = false;
            }
            if (complete) answer += weight;
            continue;
          }
          if (final_step) continue;
          std::copy(codes.begin(), codes.end(), scratch.begin());
          scratch[old_slots] = kDeg2;
          if (cx == kDeg0 && cz == kDeg0) {
            scratch[s] = 254;
            scratch[t] = 254;
          } else if (cx == kDeg0) {
            scratch[s] = cz;
            scratch[t] = kDeg2;
          } else if (cz == kDeg0) {
            scratch[t] = cx;
            scratch[s] = kDeg2;
          } else {
            // Merge two chains: z's far end joins x's pair.
            scratch[s] = kDeg2;
            scratch[t] = kDeg2;
            for (int q = 0; q < old_slots; ++q) {
              if (q != t && codes[q] == cz) scratch[q] = cx;
            }
          }
          emit(scratch, weight);
        }
      }
    }
    if (report.budget_exhausted) break;

    // Map slots for the next layer.
    for (Vertex v : active) slot_of[v] = -1;
    active = std::move(active_next);
    for (int s = 0; s < static_cast<int>(active.size()); ++s) slot_of[active[s]] = s;
    states = std::move(next_states);
  }

  report.count = report.budget_exhausted ? 0 : answer;
  report.nodes_expanded = processed;
  report.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  return report;
}

} // namespace fewham::detail
