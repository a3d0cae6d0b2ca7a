#pragma once

// Brute-force leakage measurement for a passive, key-less observer of every
// link. Ciphertexts are treated as revealing only their length, so the only
// constraints on the raw bits come from plaintext coded payloads.

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "edcnc/codec.hpp"
#include "edcnc/error.hpp"
#include "edcnc/wiretap.hpp"

namespace edcnc {

inline constexpr std::size_t kMaxEnumerationBits = 20;

struct BitStatus {
  std::optional<bool> determined;  // empty when ambiguous
  friend bool operator==(const BitStatus&, const BitStatus&) = default;
};

struct LeakageReport {
  std::size_t d_raw = 0;
  std::size_t length = 0;
  std::uint64_t consistent_count = 0;
  std::vector<std::uint64_t> per_stream;        // distinct values of x_j, index j-1
  std::vector<std::vector<BitStatus>> per_bit;  // [j-1][k]
};

struct SecurityVerdict {
  bool full_break = false;
  bool stream_disclosed = false;
  bool bit_disclosed = false;

  /// The "learns nothing" claim holds only when all three are false.
  [[nodiscard]] bool no_leakage() const noexcept { return !full_break && !stream_disclosed && !bit_disclosed; }
};

/// Enumerates all 2^(d_raw*l) candidate generations against the observed
/// plaintext coded payloads.
inline LeakageReport consistent_generations(const std::vector<CodedItem>& observed, std::size_t d_raw, std::size_t l) {
  if (d_raw == 0 || l == 0) throw Error(ErrorCode::DomainError, "d_raw and l must be positive");
  if (d_raw * l > kMaxEnumerationBits)
    throw Error(ErrorCode::TooLarge, "enumeration needs d_raw*l <= " + std::to_string(kMaxEnumerationBits));

  // Each payload bit becomes a parity check over candidate bit (j*l + k).
  struct Check {
    std::uint32_t mask;
    bool value;
  };
  std::vector<Check> checks;
  for (const auto& item : observed) {
    if (item.tuple.arity() != d_raw) throw Error(ErrorCode::ArityError, "observed tuple arity != d_raw");
    const std::size_t out_len = l + item.tuple.max_shift();
    if (item.payload.size() != out_len) throw Error(ErrorCode::LengthError, "observed payload length mismatch");
    for (std::size_t pos = 0; pos < out_len; ++pos) {
      std::uint32_t mask = 0;
      for (std::size_t j = 0; j < d_raw; ++j)
        if (pos >= item.tuple[j] && pos - item.tuple[j] < l) mask |= 1U << (j * l + pos - item.tuple[j]);
      checks.push_back({mask, item.payload[pos]});
    }
  }

  const std::uint32_t n_bits = static_cast<std::uint32_t>(d_raw * l);
  const std::uint32_t stream_mask = (1U << l) - 1U;
  std::uint32_t all_and = ~0U;
  std::uint32_t all_or = 0;
  std::vector<std::set<std::uint32_t>> values(d_raw);

  LeakageReport report;
  report.d_raw = d_raw;
  report.length = l;
  for (std::uint64_t cand = 0; cand < (std::uint64_t{1} << n_bits); ++cand) {
    const auto c = static_cast<std::uint32_t>(cand);
    bool ok = true;
    for (const auto& chk : checks) {
      if ((std::popcount(chk.mask & c) & 1) != static_cast<int>(chk.value)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++report.consistent_count;
    all_and &= c;
    all_or |= c;
    for (std::size_t j = 0; j < d_raw; ++j) values[j].insert((c >> (j * l)) & stream_mask);
  }

  report.per_stream.resize(d_raw);
  report.per_bit.assign(d_raw, std::vector<BitStatus>(l));
  for (std::size_t j = 0; j < d_raw; ++j) {
    report.per_stream[j] = values[j].size();
    if (report.consistent_count == 0) continue;
    for (std::size_t k = 0; k < l; ++k) {
      const std::uint32_t bit = 1U << (j * l + k);
      if ((all_and & bit) || !(all_or & bit)) report.per_bit[j][k].determined = (all_and & bit) != 0;
    }
  }
  return report;
}

inline LeakageReport consistent_generations(const WiretapView& view, std::size_t d_raw, std::size_t l) {
  if (d_raw * l > kMaxEnumerationBits)
    throw Error(ErrorCode::TooLarge, "enumeration needs d_raw*l <= " + std::to_string(kMaxEnumerationBits));
  return consistent_generations(view.plaintext_coded(), d_raw, l);
}

inline SecurityVerdict security_verdict(const LeakageReport& report) {
  SecurityVerdict v;
  v.full_break = report.consistent_count == 1;
  for (auto count : report.per_stream) v.stream_disclosed = v.stream_disclosed || count == 1;
  for (const auto& stream : report.per_bit)
    for (const auto& b : stream) v.bit_disclosed = v.bit_disclosed || b.determined.has_value();
  return v;
}

}  // namespace edcnc
