#include "fewham/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "fewham/connectivity.hpp"
#include "fewham/graph_io.hpp"

namespace fewham {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::json edge_list_json(std::span<const EdgeRef> edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const EdgeRef& e : edges) out.push_back({e.u, e.v, e.copy});
  return out;
}

nlohmann::json count_json(BigCount c) {
  if (fits_u64(c)) return static_cast<std::uint64_t>(c);
  return to_string(c);
}

} // namespace

const CheckResult* CertificationReport::find(const std::string& name) const {
  for (const auto& [n, r] : checks) {
    if (n == name) return &r;
  }
  return nullptr;
}

void CertificationReport::add(std::string name, bool pass, nlohmann::json witness,
                              std::chrono::microseconds elapsed) {
  checks.emplace_back(std::move(name), CheckResult{pass, std::move(witness), elapsed});
}

void CertificationReport::finish() {
  overall = std::all_of(checks.begin(), checks.end(),
                        [](const auto& kv) { return kv.second.pass; });
}

nlohmann::json CertificationReport::to_json(bool include_timings) const {
  nlohmann::json j;
  j["overall"] = overall;
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& [name, r] : checks) {
    nlohmann::json entry;
    entry["pass"] = r.pass;
    entry["witness"] = r.witness;
    if (include_timings) entry["elapsed_ms"] = r.elapsed.count() / 1000.0;
    cs[name] = std::move(entry);
  }
  j["checks"] = std::move(cs);
  if (!hg_constants.empty() || !finalized_constants.empty()) {
    nlohmann::json consts;
    for (auto& [ell, c] : hg_constants) consts["hg"][std::to_string(ell)] = count_json(c);
    for (auto& [ell, c] : finalized_constants) {
      consts["finalized"][std::to_string(ell)] = count_json(c);
    }
    j["constants"] = std::move(consts);
  }
  return j;
}

namespace {

// Runs one named check with timing.
template <typename F>
void run_check(CertificationReport& rep, std::string name, F&& f) {
  auto t0 = Clock::now();
  auto [pass, witness] = f();
  rep.add(std::move(name), pass, std::move(witness),
          std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0));
}

std::vector<std::pair<Vertex, Vertex>> marked_pairs(std::span<const Vertex> marked) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i < marked.size(); ++i) {
    for (std::size_t j = i + 1; j < marked.size(); ++j) {
      out.emplace_back(marked[i], marked[j]);
    }
  }
  return out;
}

} // namespace

CertificationReport verify_conditions(const GadgetSpec& spec) {
  spec.validate_structure();
  const MultiGraph& g = spec.graph;
  CertificationReport rep;

  run_check(rep, "01_regular_4", [&]() -> std::pair<bool, nlohmann::json> {
    nlohmann::json bad = nlohmann::json::object();
    for (Vertex v = 0; v < g.n(); ++v) {
      if (g.degree(v) != 4) bad[std::to_string(v)] = g.degree(v);
    }
    if (bad.empty()) return {true, nullptr};
    return {false, nlohmann::json{{"degrees", bad}}};
  });

  run_check(rep, "02_edge_connectivity_4", [&]() -> std::pair<bool, nlohmann::json> {
    EdgeConnectivity ec = edge_connectivity(g);
    nlohmann::json w{{"value", ec.value}};
    if (ec.value < 4) {
      w["cut"] = edge_list_json(ec.witness);
      return {false, w};
    }
    return {true, w};
  });

  run_check(rep, "03_no_hamiltonian_cycle", [&]() -> std::pair<bool, nlohmann::json> {
    HamiltonReport quick = count_hamiltonian_cycles(g);
    if (quick.count == 0) return {true, nullptr};
    CountOptions opt;
    opt.retain_cycles = true;
    opt.stop_at_first = true;
    HamiltonReport witness = count_hamiltonian_cycles(g, opt);
    nlohmann::json w{{"count", count_json(quick.count)}};
    if (!witness.cycles.empty()) w["cycle"] = witness.cycles.front().vertices;
    return {false, w};
  });

  run_check(rep, "04_split_two_factor", [&]() -> std::pair<bool, nlohmann::json> {
    EdgeRef ab(spec.a, spec.b), cd(spec.c, spec.d);
    auto found = exists_split_two_factor(g, ab, cd);
    if (!found) return {false, nlohmann::json{{"reason", "no two-cycle 2-factor splits ab and cd"}}};
    nlohmann::json w;
    w["two_factor"] = nlohmann::json::array();
    for (const auto& comp : found->components) w["two_factor"].push_back(edge_list_json(comp));
    if (spec.two_factor) {
      auto err = check_two_factor(g, *spec.two_factor);
      if (err) return {false, nlohmann::json{{"reason", "stored certificate invalid: " + *err}}};
      if (spec.two_factor->components.size() != 2) {
        return {false, nlohmann::json{{"reason", "stored certificate is not two cycles"}}};
      }
      auto has_pair = [](const std::vector<EdgeRef>& comp, Vertex x, Vertex y) {
        EdgeRef probe(x, y);
        return std::any_of(comp.begin(), comp.end(), [&](const EdgeRef& e) {
          return e.u == probe.u && e.v == probe.v;
        });
      };
      bool split = (has_pair(spec.two_factor->components[0], spec.a, spec.b) &&
                    has_pair(spec.two_factor->components[1], spec.c, spec.d)) ||
                   (has_pair(spec.two_factor->components[0], spec.c, spec.d) &&
                    has_pair(spec.two_factor->components[1], spec.a, spec.b));
      if (!split) {
        return {false, nlohmann::json{{"reason", "stored certificate does not split ab and cd"}}};
      }
    }
    return {true, w};
  });

  const std::vector<Vertex> marked{spec.a, spec.b, spec.c, spec.d};
  MultiGraph g_minus_bc = delete_edges(g, std::vector<EdgeRef>{EdgeRef(spec.b, spec.c)});

  run_check(rep, "05_no_marked_ham_path", [&]() -> std::pair<bool, nlohmann::json> {
    for (auto [x, y] : marked_pairs(marked)) {
      HamPathResult hp = has_hamiltonian_path(g_minus_bc, x, y);
      if (hp.exists) {
        return {false, nlohmann::json{{"pair", {x, y}}, {"path", hp.path}}};
      }
    }
    return {true, nullptr};
  });

  run_check(rep, "06_no_marked_ham_path_deleted", [&]() -> std::pair<bool, nlohmann::json> {
    for (Vertex v : marked) {
      VertexDeletion del = delete_vertex(g_minus_bc, v);
      std::vector<Vertex> rest;
      for (Vertex w : marked) {
        if (w != v) rest.push_back(w);
      }
      for (auto [x, y] : marked_pairs(rest)) {
        HamPathResult hp = has_hamiltonian_path(del.graph, del.old_to_new[x], del.old_to_new[y]);
        if (hp.exists) {
          // Report in the gadget's own vertex ids.
          std::vector<Vertex> new_to_old(del.graph.n());
          for (Vertex w = 0; w < g_minus_bc.n(); ++w) {
            if (del.old_to_new[w] >= 0) new_to_old[del.old_to_new[w]] = w;
          }
          std::vector<Vertex> path;
          for (Vertex w : hp.path) path.push_back(new_to_old[w]);
          return {false,
                  nlohmann::json{{"deleted", v}, {"pair", {x, y}}, {"path", path}}};
        }
      }
    }
    return {true, nullptr};
  });

  rep.finish();
  return rep;
}

namespace {

// Expanded member plus bookkeeping for the cross-check identity.
struct FinalizedBuild {
  MultiGraph graph;
  int expanded_vertices = 0;
};

FinalizedBuild finalize_from_hg(const HgAssembly& hg) {
  FinalizedBuild out;
  std::set<Vertex> ends;
  for (auto [u, v] : hg.graph.doubled_pairs()) {
    ends.insert(u);
    ends.insert(v);
  }
  out.expanded_vertices = static_cast<int>(ends.size());
  out.graph = expand_double_edge_ends(hg.graph);
  return out;
}

// Adds the per-ell checks shared by certify_family and finalize_family_member.
// Returns the H_G count and the finalized count (when everything built).
struct EllResult {
  bool assembled = false;
  BigCount hg_count = 0;
  BigCount fin_count = 0;
};

EllResult check_one_ell(CertificationReport& rep, const GadgetSpec& spec,
                        const LadderPattern& pattern, int ell, int workers) {
  EllResult result;
  std::string tag = "ell" + std::to_string(ell);

  HgAssembly hg;
  bool assembled = false;
  run_check(rep, "10_" + tag + "_assembly", [&]() -> std::pair<bool, nlohmann::json> {
    try {
      hg = assemble_hg(spec, {ell, pattern});
      assembled = true;
      return {true, nlohmann::json{{"n", hg.graph.n()}}};
    } catch (const AssemblyError& e) {
      return {false, nlohmann::json{{"error", e.what()},
                                    {"vertices", e.offending_vertices}}};
    }
  });
  if (!assembled) return result;
  result.assembled = true;

  CountOptions opt;
  opt.retain_cycles = true;
  opt.workers = workers;
  HamiltonReport hg_rep = count_hamiltonian_cycles(hg.graph, opt);
  result.hg_count = hg_rep.count;

  run_check(rep, "11_" + tag + "_paths_contained", [&]() -> std::pair<bool, nlohmann::json> {
    std::set<std::pair<Vertex, Vertex>> path_edges(hg.path_edges.begin(), hg.path_edges.end());
    for (const HamiltonCycle& cyc : hg_rep.cycles) {
      std::set<std::pair<Vertex, Vertex>> used;
      int n = static_cast<int>(cyc.vertices.size());
      for (int i = 0; i < n; ++i) {
        Vertex u = cyc.vertices[i], v = cyc.vertices[(i + 1) % n];
        used.insert({std::min(u, v), std::max(u, v)});
      }
      for (const auto& e : path_edges) {
        if (!used.count(e)) {
          nlohmann::json w;
          w["cycle"] = cyc.vertices;
          w["missing_edge"] = nlohmann::json::array({e.first, e.second});
          return {false, w};
        }
      }
    }
    return {true, nlohmann::json{{"cycles", count_json(result.hg_count)}}};
  });

  FinalizedBuild fin;
  bool expanded = false;
  run_check(rep, "12_" + tag + "_finalized_simple", [&]() -> std::pair<bool, nlohmann::json> {
    try {
      fin = finalize_from_hg(hg);
      expanded = true;
      return {true, nlohmann::json{{"n", fin.graph.n()}}};
    } catch (const GraphError& e) {
      return {false, nlohmann::json{{"error", e.what()}}};
    }
  });
  if (!expanded) return result;

  run_check(rep, "13_" + tag + "_finalized_regular_4", [&]() -> std::pair<bool, nlohmann::json> {
    auto r = fin.graph.regularity();
    if (r == std::optional<int>(4)) return {true, nullptr};
    return {false, nlohmann::json{{"regularity", r ? nlohmann::json(*r) : nlohmann::json()}}};
  });

  run_check(rep, "14_" + tag + "_finalized_vertex_connectivity_4",
            [&]() -> std::pair<bool, nlohmann::json> {
    VertexConnectivity vc = vertex_connectivity(fin.graph);
    nlohmann::json w{{"value", vc.value}};
    if (vc.witness) w["cut"] = *vc.witness;
    return {vc.value == 4, w};
  });

  CountOptions fin_opt;
  fin_opt.workers = workers;
  HamiltonReport fin_rep = count_hamiltonian_cycles(fin.graph, fin_opt);
  result.fin_count = fin_rep.count;

  run_check(rep, "15_" + tag + "_finalized_count_crosscheck",
            [&]() -> std::pair<bool, nlohmann::json> {
    // Each expanded vertex multiplies the count by the 12 spanning paths of
    // K_{3,4} between two fixed 4-side vertices.
    BigCount expect = result.hg_count;
    for (int i = 0; i < fin.expanded_vertices; ++i) expect *= 12u;
    nlohmann::json w{{"hg_count", count_json(result.hg_count)},
                     {"expanded_vertices", fin.expanded_vertices},
                     {"finalized_count", count_json(result.fin_count)},
                     {"expected", count_json(expect)}};
    return {expect == result.fin_count, w};
  });

  return result;
}

void add_constancy_checks(CertificationReport& rep, const std::string& prefix,
                          const std::map<int, BigCount>& counts) {
  run_check(rep, prefix + "_count_constant", [&]() -> std::pair<bool, nlohmann::json> {
    nlohmann::json seen = nlohmann::json::object();
    bool constant = true;
    std::optional<BigCount> first;
    for (auto& [ell, c] : counts) {
      seen[std::to_string(ell)] = count_json(c);
      if (!first) first = c;
      if (*first != c) constant = false;
    }
    return {constant && !counts.empty(), seen};
  });
  run_check(rep, prefix + "_count_positive", [&]() -> std::pair<bool, nlohmann::json> {
    bool positive = !counts.empty() &&
                    std::all_of(counts.begin(), counts.end(),
                                [](const auto& kv) { return kv.second > 0; });
    return {positive, nullptr};
  });
}

} // namespace

CertificationReport certify_family(const GadgetSpec& spec, const LadderPattern& pattern,
                                   std::span<const int> ell_set, int workers) {
  if (ell_set.size() < 2) {
    throw GraphError("certify_family needs at least two stretching values to attest constancy");
  }
  CertificationReport rep;
  for (int ell : ell_set) {
    EllResult r = check_one_ell(rep, spec, pattern, ell, workers);
    if (r.assembled) {
      rep.hg_constants[ell] = r.hg_count;
      rep.finalized_constants[ell] = r.fin_count;
    }
  }
  add_constancy_checks(rep, "20_hg", rep.hg_constants);
  add_constancy_checks(rep, "21_finalized", rep.finalized_constants);
  rep.finish();
  return rep;
}

FinalizedMember finalize_family_member(const GadgetSpec& spec, const FamilyParams& params,
                                       int workers) {
  FinalizedMember out;
  EllResult r = check_one_ell(out.report, spec, params.pattern, params.ell, workers);
  if (r.assembled) {
    out.report.hg_constants[params.ell] = r.hg_count;
    out.report.finalized_constants[params.ell] = r.fin_count;
    run_check(out.report, "16_counts_positive", [&]() -> std::pair<bool, nlohmann::json> {
      return {r.hg_count > 0 && r.fin_count > 0, nullptr};
    });
  }
  out.report.finish();
  if (out.report.overall) {
    HgAssembly hg = assemble_hg(spec, params);
    out.graph = expand_double_edge_ends(hg.graph);
  }
  return out;
}

CertificationReport property_suite(std::span<const CatalogEntry> corpus, int workers) {
  CertificationReport rep;

  run_check(rep, "smith_parity", [&]() -> std::pair<bool, nlohmann::json> {
    int graphs_checked = 0;
    for (const CatalogEntry& entry : corpus) {
      const MultiGraph& g = entry.graph;
      if (!g.simple() || g.regularity() != std::optional<int>(3)) continue;
      ++graphs_checked;
      for (const auto& cl : g.classes()) {
        BigCount through = count_through_edge(g, EdgeRef(cl.u, cl.v));
        if (through % 2 != 0) {
          return {false, nlohmann::json{{"graph", entry.name},
                                        {"graph6", write_graph6(g)},
                                        {"edge", {cl.u, cl.v}},
                                        {"count_through", count_json(through)}}};
        }
      }
    }
    return {true, nlohmann::json{{"cubic_graphs_checked", graphs_checked}}};
  });

  run_check(rep, "thomason_second_cycle", [&]() -> std::pair<bool, nlohmann::json> {
    int graphs_checked = 0;
    for (const CatalogEntry& entry : corpus) {
      const MultiGraph& g = entry.graph;
      bool all_odd = g.n() > 0;
      for (Vertex v = 0; v < g.n(); ++v) {
        if (g.degree(v) % 2 == 0) all_odd = false;
      }
      if (!all_odd) continue;
      ++graphs_checked;
      CountOptions opt;
      opt.workers = workers;
      HamiltonReport r = count_hamiltonian_cycles(g, opt);
      if (r.count == 1) {
        nlohmann::json w{{"graph", entry.name}, {"count", 1}};
        if (g.simple()) w["graph6"] = write_graph6(g);
        return {false, w};
      }
    }
    return {true, nlohmann::json{{"odd_degree_graphs_checked", graphs_checked}}};
  });

  rep.finish();
  return rep;
}

} // namespace fewham
