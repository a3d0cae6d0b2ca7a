#pragma once

// Test-only reference computations. Independent of the library's encode and
// GF(2) solver: payload bits are computed straight from the per-position
// definition, and decoding is done by exhaustive enumeration.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Bits = std::vector<int>;

inline Bits bits(const std::string& s) {
  Bits out;
  for (char c : s) out.push_back(c - '0');
  return out;
}

inline std::string str(const Bits& b) {
  std::string s;
  for (int v : b) s.push_back(static_cast<char>('0' + v));
  return s;
}

/// c[k] = XOR_j x_j[k - r_j] over the j with 0 <= k - r_j < L.
inline Bits encode(const std::vector<Bits>& streams, const std::vector<std::uint32_t>& shifts) {
  const std::size_t len = streams.front().size();
  std::uint32_t max_shift = 0;
  for (auto r : shifts) max_shift = r > max_shift ? r : max_shift;
  Bits out(len + max_shift, 0);
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t j = 0; j < streams.size(); ++j)
      if (k >= shifts[j] && k - shifts[j] < len) out[k] ^= streams[j][k - shifts[j]];
  return out;
}

/// Candidate generation number `g` split into d_raw streams of length l.
inline std::vector<Bits> unpack_candidate(std::uint64_t g, std::size_t d_raw, std::size_t l) {
  std::vector<Bits> out(d_raw, Bits(l, 0));
  for (std::size_t j = 0; j < d_raw; ++j)
    for (std::size_t k = 0; k < l; ++k) out[j][k] = static_cast<int>((g >> (j * l + k)) & 1U);
  return out;
}

struct Observation {
  std::optional<std::size_t> raw_index;  // 1-based; empty for coded
  std::vector<std::uint32_t> shifts;
  Bits payload;
};

inline bool consistent(const std::vector<Bits>& cand, const std::vector<Observation>& obs) {
  for (const auto& o : obs) {
    if (o.raw_index) {
      if (cand[*o.raw_index - 1] != o.payload) return false;
    } else if (encode(cand, o.shifts) != o.payload) {
      return false;
    }
  }
  return true;
}

struct EnumerationResult {
  std::uint64_t count = 0;
  std::vector<Bits> first;
};

inline EnumerationResult enumerate(const std::vector<Observation>& obs, std::size_t d_raw, std::size_t l) {
  EnumerationResult r;
  for (std::uint64_t g = 0; g < (std::uint64_t{1} << (d_raw * l)); ++g) {
    auto cand = unpack_candidate(g, d_raw, l);
    if (!consistent(cand, obs)) continue;
    if (r.count++ == 0) r.first = cand;
  }
  return r;
}

/// Reference CRC-32 (IEEE, reflected), bitwise.
inline std::uint32_t crc32(const std::vector<std::uint8_t>& data) {
  std::uint32_t crc = 0xFFFFFFFFU;
  for (auto byte : data) {
    crc ^= byte;
    for (int i = 0; i < 8; ++i) crc = (crc >> 1) ^ (0xEDB88320U & (0U - (crc & 1U)));
  }
  return crc ^ 0xFFFFFFFFU;
}

}  // namespace oracle
