#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fewham/bigcount.hpp"
#include "fewham/multigraph.hpp"

namespace fewham {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

std::string sha256_hex(std::string_view data);

// Counts render as JSON numbers while they fit in 64 bits, decimal strings
// beyond that.
nlohmann::json bigcount_json(BigCount c);

// The run-report envelope shared by every CLI command:
// {"version", "command", "input_sha", "graph", "results", "stats"}.
class RunReport {
 public:
  RunReport(std::string command, std::string_view input_bytes);

  void describe_graph(const MultiGraph& g);
  void set_result(const std::string& key, nlohmann::json value);
  void set_stat(const std::string& key, nlohmann::json value);

  // include_timings=false removes elapsed fields for byte-stable comparison.
  nlohmann::json to_json(bool include_timings = true) const;
  void write_file(const std::string& path) const;

 private:
  nlohmann::json j_;
};

} // namespace fewham
