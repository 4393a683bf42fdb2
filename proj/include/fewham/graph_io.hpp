#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fewham/multigraph.hpp"

namespace fewham {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph6: printable encoding of simple graphs (optional ">>graph6<<" header,
// N(n) size bytes, then column-major upper-triangle adjacency bits packed six
// per byte, each group stored as value + 63).
MultiGraph parse_graph6(std::string_view text);
std::string write_graph6(const MultiGraph& g); // rejects multigraphs

std::string write_dot(const MultiGraph& g); // one edge statement per multiplicity unit

// {"n": int, "edges": [[u, v, mult], ...] sorted, "labels": {"id": tag}}
nlohmann::json to_multigraph_json(const MultiGraph& g);
MultiGraph from_multigraph_json(const nlohmann::json& j);
std::string write_multigraph_json(const MultiGraph& g);
MultiGraph parse_multigraph_json(std::string_view text);

// Accepts graph6 or multigraph JSON, sniffed from the content.
MultiGraph parse_any_graph(std::string_view text);
MultiGraph load_graph_file(const std::string& path);

} // namespace fewham
