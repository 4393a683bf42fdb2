#include "fewham/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fewham {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";
constexpr int kBias = 63;

std::string_view strip_line(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  return text;
}

int payload_byte(std::string_view text, size_t i) {
  unsigned char c = static_cast<unsigned char>(text[i]);
  if (c < 63 || c > 126) {
    throw FormatError("graph6: byte " + std::to_string(i) + " (value " + std::to_string(c) +
                      ") outside printable range [63,126]");
  }
  return c - kBias;
}

} // namespace

MultiGraph parse_graph6(std::string_view text) {
  text = strip_line(text);
  if (text.substr(0, kHeader.size()) == kHeader) text.remove_prefix(kHeader.size());
  if (text.empty()) throw FormatError("graph6: empty input");

  size_t pos = 0;
  std::int64_t n = 0;
  int first = payload_byte(text, pos);
  if (first < 63) {
    n = first;
    pos = 1;
  } else {
    if (text.size() < 2) throw FormatError("graph6: truncated size field");
    if (payload_byte(text, 1) == 63) {
      // 8-byte form: "~~" + 6 data bytes (36 bits)
      if (text.size() < 8) throw FormatError("graph6: truncated 8-byte size field");
      for (size_t i = 2; i < 8; ++i) n = (n << 6) | payload_byte(text, i);
      pos = 8;
    } else {
      // 4-byte form: "~" + 3 data bytes (18 bits)
      if (text.size() < 4) throw FormatError("graph6: truncated 4-byte size field");
      for (size_t i = 1; i < 4; ++i) n = (n << 6) | payload_byte(text, i);
      pos = 4;
    }
  }
  if (n > 100000) throw FormatError("graph6: vertex count " + std::to_string(n) + " too large");

  std::int64_t bits = n * (n - 1) / 2;
  size_t expect = static_cast<size_t>((bits + 5) / 6);
  if (text.size() - pos != expect) {
    throw FormatError("graph6: expected " + std::to_string(expect) + " data bytes for n=" +
                      std::to_string(n) + ", got " + std::to_string(text.size() - pos));
  }

  GraphBuilder b(static_cast<int>(n));
  std::int64_t bit = 0;
  int group = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++bit) {
      if (bit % 6 == 0) group = payload_byte(text, pos + static_cast<size_t>(bit / 6));
      if (group & (1 << (5 - bit % 6))) b.add_edge(i, j);
    }
  }
  // Padding bits must be zero.
  for (; bit % 6 != 0; ++bit) {
    if (group & (1 << (5 - bit % 6))) throw FormatError("graph6: nonzero padding bits");
  }
  return b.build(false);
}

std::string write_graph6(const MultiGraph& g) {
  if (!g.simple()) {
    throw GraphError("graph6 cannot encode parallel edges; use the multigraph JSON form");
  }
  std::int64_t n = g.n();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(((n >> 12) & 63) + kBias));
    out.push_back(static_cast<char>(((n >> 6) & 63) + kBias));
    out.push_back(static_cast<char>((n & 63) + kBias));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(126));
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  }

  int group = 0;
  int filled = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      group = (group << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(group + kBias));
        group = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((group << (6 - filled)) + kBias));
  return out;
}

std::string write_dot(const MultiGraph& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!g.label(v).empty()) {
      os << "  " << v << " [label=\"" << g.label(v) << "\"];\n";
    } else if (g.degree(v) == 0) {
      os << "  " << v << ";\n";
    }
  }
  for (const auto& c : g.classes()) {
    for (int k = 0; k < c.mult; ++k) os << "  " << c.u << " -- " << c.v << ";\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json to_multigraph_json(const MultiGraph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  auto edges = nlohmann::json::array();
  for (const auto& c : g.classes()) edges.push_back({c.u, c.v, c.mult});
  j["edges"] = std::move(edges);
  auto labels = nlohmann::json::object();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!g.label(v).empty()) labels[std::to_string(v)] = g.label(v);
  }
  j["labels"] = std::move(labels);
  return j;
}

MultiGraph from_multigraph_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw FormatError("multigraph JSON: expected object with \"n\" and \"edges\"");
  }
  int n = j.at("n").get<int>();
  GraphBuilder b(n);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) {
      throw FormatError("multigraph JSON: edge entries must be [u, v, mult]");
    }
    b.add_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<int>());
  }
  if (j.contains("labels")) {
    for (auto it = j.at("labels").begin(); it != j.at("labels").end(); ++it) {
      b.set_label(std::stoi(it.key()), it.value().get<std::string>());
    }
  }
  return b.build();
}

std::string write_multigraph_json(const MultiGraph& g) {
  return to_multigraph_json(g).dump(2) + "\n";
}

MultiGraph parse_multigraph_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, true);
  return from_multigraph_json(j);
}

MultiGraph parse_any_graph(std::string_view text) {
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i == std::string_view::npos) throw FormatError("empty graph input");
  if (text[i] == '{') return parse_multigraph_json(text);
  return parse_graph6(text.substr(i, text.find('\n', i) - i));
}

MultiGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_any_graph(ss.str());
}

} // namespace fewham
