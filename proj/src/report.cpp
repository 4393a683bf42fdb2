#include "fewham/report.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace fewham {

namespace {

// Compact SHA-256, enough for input digests in reports.
struct Sha256 {
  std::array<std::uint32_t, 8> h{0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                 0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
  std::array<std::uint8_t, 64> block{};
  std::size_t block_len = 0;
  std::uint64_t total = 0;

  static constexpr std::array<std::uint32_t, 64> k = {
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
      0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
      0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
      0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
      0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
      0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
      0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
      0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
      0xc67178f2};

  static std::uint32_t rotr(std::uint32_t x, int n) { return std::rotr(x, n); }

  void compress() {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i) {
      w[i] = (block[4 * i] << 24) | (block[4 * i + 1] << 16) | (block[4 * i + 2] << 8) |
             block[4 * i + 3];
    }
    for (int i = 16; i < 64; ++i) {
      std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto [a, b, c, d, e, f, g, hh] = h;
    for (int i = 0; i < 64; ++i) {
      std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      std::uint32_t ch = (e & f) ^ (~e & g);
      std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
      std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      std::uint32_t t2 = s0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  void update(const std::uint8_t* data, std::size_t len) {
    total += len;
    while (len > 0) {
      std::size_t take = std::min(len, block.size() - block_len);
      std::memcpy(block.data() + block_len, data, take);
      block_len += take;
      data += take;
      len -= take;
      if (block_len == block.size()) {
        compress();
        block_len = 0;
      }
    }
  }

  std::string finish() {
    std::uint64_t bits = total * 8;
    std::uint8_t pad = 0x80;
    update(&pad, 1);
    std::uint8_t zero = 0;
    while (block_len != 56) update(&zero, 1);
    for (int i = 7; i >= 0; --i) {
      std::uint8_t byte = static_cast<std::uint8_t>(bits >> (8 * i));
      update(&byte, 1);
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (std::uint32_t word : h) {
      for (int i = 3; i >= 0; --i) {
        std::uint8_t byte = static_cast<std::uint8_t>(word >> (8 * i));
        out.push_back(hex[byte >> 4]);
        out.push_back(hex[byte & 15]);
      }
    }
    return out;
  }
};

} // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 s;
  s.update(reinterpret_cast<const std::uint8_t*>(data.data()), data.size());
  return s.finish();
}

nlohmann::json bigcount_json(BigCount c) {
  if (fits_u64(c)) return static_cast<std::uint64_t>(c);
  return to_string(c);
}

RunReport::RunReport(std::string command, std::string_view input_bytes) {
  j_["version"] = std::string(kToolVersion);
  j_["schema"] = kReportSchemaVersion;
  j_["command"] = std::move(command);
  j_["input_sha"] = sha256_hex(input_bytes);
  j_["graph"] = nullptr;
  j_["results"] = nlohmann::json::object();
  j_["stats"] = nlohmann::json::object();
}

void RunReport::describe_graph(const MultiGraph& g) {
  nlohmann::json d;
  d["n"] = g.n();
  d["edges"] = g.total_multiplicity();
  auto r = g.regularity();
  d["regular"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
  j_["graph"] = std::move(d);
}

void RunReport::set_result(const std::string& key, nlohmann::json value) {
  j_["results"][key] = std::move(value);
}

void RunReport::set_stat(const std::string& key, nlohmann::json value) {
  j_["stats"][key] = std::move(value);
}

nlohmann::json RunReport::to_json(bool include_timings) const {
  if (include_timings) return j_;
  nlohmann::json out = j_;
  out["stats"].erase("elapsed_ms");
  // Checks embedded via verify reports carry their own timing fields.
  if (out["results"].contains("checks")) {
    for (auto& [name, entry] : out["results"]["checks"].items()) {
      if (entry.is_object()) entry.erase("elapsed_ms");
    }
  }
  return out;
}

void RunReport::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write report to " + path);
  out << j_.dump(2) << "\n";
}

} // namespace fewham
