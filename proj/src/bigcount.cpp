#include "fewham/bigcount.hpp"

#include <algorithm>
#include <stdexcept>

namespace fewham {

std::string to_string(BigCount x) {
  if (x == 0) return "0";
  std::string out;
  while (x > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BigCount bigcount_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty count string");
  BigCount x = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad digit in count string");
    BigCount next = x * 10 + static_cast<unsigned>(c - '0');
    if (next < x) throw std::overflow_error("count string exceeds 128 bits");
    x = next;
  }
  return x;
}

} // namespace fewham
