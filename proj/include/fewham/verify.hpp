#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fewham/bigcount.hpp"
#include "fewham/constructions.hpp"
#include "fewham/corpus.hpp"

namespace fewham {

struct CheckResult {
  bool pass = false;
  nlohmann::json witness; // null when passing checks have nothing to show
  std::chrono::microseconds elapsed{0};
};

struct CertificationReport {
  std::vector<std::pair<std::string, CheckResult>> checks;
  bool overall = false;
  std::map<int, BigCount> hg_constants;        // ell -> count(H_G(ell))
  std::map<int, BigCount> finalized_constants; // ell -> count(finalized(ell))

  const CheckResult* find(const std::string& name) const;
  void add(std::string name, bool pass, nlohmann::json witness,
           std::chrono::microseconds elapsed);
  void finish() ;

  // include_timings=false yields the canonical byte-stable serialization.
  nlohmann::json to_json(bool include_timings = true) const;
};

// Gadget conditions, in order: 4-regularity; edge connectivity >= 4; no
// Hamiltonian cycle; a two-cycle 2-factor splitting ab and cd; no Hamiltonian
// path between marked vertices in G - bc; none in G - v - bc for each marked v.
CertificationReport verify_conditions(const GadgetSpec& spec);

// Assembles, counts, and finalizes each member of ell_set (|ell_set| >= 2):
// path containment, count constancy and positivity for both H_G and the
// expanded members, simplicity, 4-regularity, vertex connectivity exactly 4.
CertificationReport certify_family(const GadgetSpec& spec, const LadderPattern& pattern,
                                   std::span<const int> ell_set, int workers = 1);

struct FinalizedMember {
  MultiGraph graph;
  CertificationReport report;
};
// One family member, fully certified; the graph is only meaningful when
// report.overall holds.
FinalizedMember finalize_family_member(const GadgetSpec& spec, const FamilyParams& params,
                                       int workers = 1);

// Smith parity over simple cubic members and the second-cycle consequence
// over all-odd-degree members.
CertificationReport property_suite(std::span<const CatalogEntry> corpus, int workers = 1);

} // namespace fewham
