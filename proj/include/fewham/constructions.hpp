#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fewham/hamilton.hpp"
#include "fewham/multigraph.hpp"

namespace fewham {

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
MultiGraph petersen();

// All perfect matchings as sorted pair lists, lexicographic order.
std::vector<std::vector<std::pair<Vertex, Vertex>>> perfect_matchings(const MultiGraph& g);

MultiGraph double_one_factor(const MultiGraph& g,
                             std::span<const std::pair<Vertex, Vertex>> matching);

// The 4-regular gadget graph with its marked path abcd and (optionally) a
// stored 2-factor certificate splitting ab and cd into two cycles.
struct GadgetSpec {
  MultiGraph graph;
  Vertex a = 0, b = 0, c = 0, d = 0;
  std::optional<TwoFactor> two_factor;

  // Path abcd must be present with distinct vertices; throws GraphError.
  void validate_structure() const;
};

nlohmann::json gadget_to_json(const GadgetSpec& spec);
GadgetSpec gadget_from_json(const nlohmann::json& j);

struct GadgetSearchStats {
  int matchings = 0;
  int paths_tried = 0;
  int rejected_no_split_two_factor = 0;
  int rejected_conditions = 0;
};

// Exhaustive deterministic search over the default candidate space: the
// Petersen graph with each perfect matching doubled, crossed with every
// marked path abcd. Returns the first spec passing every gadget condition.
GadgetSpec find_gadget(GadgetSearchStats* stats = nullptr);

// ---- ladder patterns -------------------------------------------------------

// Addresses a strand position: start offset k counts from the gadget-side
// terminus, end offset k from the far terminus.
struct StrandAddress {
  std::string strand; // "Pa" | "Pb" | "Pc" | "Pd"
  std::string anchor; // "start" | "end"
  int offset = 0;
};

// A maximal alternating chord run between two strands: hops cover every
// internal vertex of both strands exactly once, from one terminus to another.
struct ZigZagRun {
  std::string strand_a, strand_b;
  StrandAddress from, to;
};

// Addresses the path edge (position, position + 1) counted from an anchor.
struct PathEdgeAddress {
  std::string strand;
  std::string anchor;
  int offset = 0;
};

struct LadderPattern {
  std::string name;
  int ell_min = 1;
  std::vector<ZigZagRun> runs;
  std::vector<std::pair<StrandAddress, StrandAddress>> chords; // junction chords
  std::vector<PathEdgeAddress> doubled;                        // doubled path edges
};

nlohmann::json pattern_to_json(const LadderPattern& p);
LadderPattern pattern_from_json(const nlohmann::json& j);

// The deterministic pattern family the synthesizer searches, in order. The
// first entry is the strict per-ladder family (it cannot complete degrees and
// documents the near-miss); the rest add one junction chord.
std::vector<LadderPattern> builtin_patterns();

struct FamilyParams {
  int ell = 2;
  LadderPattern pattern;
};

struct AssemblyError : GraphError {
  AssemblyError(const std::string& msg, std::vector<Vertex> offending = {})
      : GraphError(msg), offending_vertices(std::move(offending)) {}
  std::vector<Vertex> offending_vertices;
};

struct Strand {
  std::string name;
  std::vector<Vertex> vertices; // terminus, internals..., terminus
};

struct HgAssembly {
  MultiGraph graph;
  std::vector<Strand> strands;                             // Pa, Pb, Pc, Pd
  std::vector<std::pair<Vertex, Vertex>> path_edges;       // every P_* edge
  std::vector<std::pair<Vertex, Vertex>> declared_doubles; // doubled by the pattern
};

// Disjoint gadget copies, six deletions, four connector paths, ladder chords.
// Enforces the degree, connectivity, and parallel-pair postconditions and
// throws AssemblyError naming offending vertices otherwise.
HgAssembly assemble_hg(const GadgetSpec& spec, const FamilyParams& params);

struct SynthesisNearMiss {
  std::string pattern;
  std::string reason;
};

struct SynthesisResult {
  LadderPattern pattern;
  BigCount hg_constant = 0; // count(H_G(ell)) across the probe range
  std::vector<SynthesisNearMiss> near_misses;
};

struct SynthesisError : GraphError {
  SynthesisError(const std::string& msg, std::vector<SynthesisNearMiss> misses)
      : GraphError(msg), near_misses(std::move(misses)) {}
  std::vector<SynthesisNearMiss> near_misses;
};

// Tries each pattern in the family across >= 3 consecutive probe values of
// the stretching parameter; a pattern qualifies when assembly postconditions
// hold, every Hamiltonian cycle contains all four connector paths, and the
// count is one positive constant.
SynthesisResult synthesize_ladder_pattern(const GadgetSpec& spec, std::span<const int> probe_range,
                                          int workers = 1);

// Replaces each target (degree exactly 4) by a K_{3,4}: former edge-ends
// attach to the 4-side sorted by (far endpoint, copy); 6 fresh vertices each.
MultiGraph meredith_expand(const MultiGraph& g, std::span<const Vertex> targets);

// Both ends of every double edge expanded; postcondition: simple.
MultiGraph expand_double_edge_ends(const MultiGraph& g);

// The classical 70-vertex graph: Petersen with a doubled 1-factor, every
// vertex expanded.
MultiGraph meredith_graph();

MultiGraph triangle_replace(const MultiGraph& g, Vertex v);
// k successive replacements starting from K_4, always at the lowest eligible
// vertex.
MultiGraph triangle_family(int k);

// ---- Fig. 1 family (gated on a transcribed block template) ----------------

struct Fig1Template {
  int m_min = 3;
  MultiGraph block;
  std::vector<Vertex> left_ports, right_ports;
  std::vector<std::pair<int, int>> chain; // right port index -> next block's left port index
};

struct FigureTranscriptionRequired : GraphError {
  FigureTranscriptionRequired()
      : GraphError("figure transcription required: no block template configured") {}
};

Fig1Template fig1_template_from_json(const nlohmann::json& j);
MultiGraph fig1_family(int m, const std::optional<Fig1Template>& tmpl);

} // namespace fewham
