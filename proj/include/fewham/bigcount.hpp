#pragma once

#include <cstdint>
#include <string>

namespace fewham {

// Exact Hamiltonian-cycle counts. Finalized family members have counts on the
// order of 12^(2 * number of double edges), which overflows 64 bits.
using BigCount = unsigned __int128;

std::string to_string(BigCount x);
BigCount bigcount_from_string(const std::string& s);

inline bool fits_u64(BigCount x) { return x <= static_cast<BigCount>(UINT64_MAX); }

} // namespace fewham
