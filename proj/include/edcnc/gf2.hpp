#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace edcnc::gf2 {

/// Linear system A x = b over GF(2). Rows are packed 64 bits per word with
/// the right-hand side stored in one extra trailing column.
class LinearSystem {
 public:
  enum class Outcome { Unique, Underdetermined, Inconsistent };

  explicit LinearSystem(std::size_t unknowns)
      : unknowns_(unknowns), words_((unknowns + 1 + 63) / 64) {}

  [[nodiscard]] std::size_t unknowns() const noexcept { return unknowns_; }
  [[nodiscard]] std::size_t equations() const noexcept { return rows_.size() / words_; }

  void add_equation(std::span<const std::size_t> vars, bool rhs) {
    const std::size_t base = rows_.size();
    rows_.resize(base + words_, 0);
    for (std::size_t v : vars) rows_[base + v / 64] ^= std::uint64_t{1} << (v % 64);
    if (rhs) rows_[base + unknowns_ / 64] ^= std::uint64_t{1} << (unknowns_ % 64);
  }

  /// Rank of the coefficient matrix; right-hand sides are ignored.
  [[nodiscard]] std::size_t rank() const {
    auto copy = rows_;
    return eliminate(copy, /*with_rhs=*/false).rank;
  }

  struct Solution {
    Outcome outcome;
    std::size_t rank;
    std::vector<std::uint8_t> values;  // filled only for Outcome::Unique
  };

  [[nodiscard]] Solution solve() const {
    auto work = rows_;
    auto reduced = eliminate(work, /*with_rhs=*/true);
    const std::size_t n_rows = equations();
    for (std::size_t r = reduced.rank; r < n_rows; ++r) {
      if (bit(work, r, unknowns_)) return {Outcome::Inconsistent, reduced.rank, {}};
    }
    if (reduced.rank < unknowns_) return {Outcome::Underdetermined, reduced.rank, {}};
    std::vector<std::uint8_t> x(unknowns_, 0);
    // Fully reduced: pivot row r has a single coefficient at pivots[r].
    for (std::size_t r = 0; r < reduced.rank; ++r) {
      x[reduced.pivots[r]] = bit(work, r, unknowns_) ? 1 : 0;
    }
    return {Outcome::Unique, reduced.rank, std::move(x)};
  }

 private:
  struct Reduced {
    std::size_t rank;
    std::vector<std::size_t> pivots;
  };

  [[nodiscard]] bool bit(const std::vector<std::uint64_t>& m, std::size_t row, std::size_t col) const {
    return (m[row * words_ + col / 64] >> (col % 64)) & 1U;
  }

  void swap_rows(std::vector<std::uint64_t>& m, std::size_t a, std::size_t b) const {
    for (std::size_t w = 0; w < words_; ++w) std::swap(m[a * words_ + w], m[b * words_ + w]);
  }

  void xor_row(std::vector<std::uint64_t>& m, std::size_t dst, std::size_t src) const {
    for (std::size_t w = 0; w < words_; ++w) m[dst * words_ + w] ^= m[src * words_ + w];
  }

  // Gauss-Jordan elimination in place; rows [0, rank) end up as pivot rows.
  Reduced eliminate(std::vector<std::uint64_t>& m, bool with_rhs) const {
    const std::size_t n_rows = m.size() / words_;
    if (!with_rhs) {
      for (std::size_t r = 0; r < n_rows; ++r)
        m[r * words_ + unknowns_ / 64] &= ~(std::uint64_t{1} << (unknowns_ % 64));
    }
    Reduced out{0, {}};
    for (std::size_t col = 0; col < unknowns_ && out.rank < n_rows; ++col) {
      std::size_t pivot = out.rank;
      while (pivot < n_rows && !bit(m, pivot, col)) ++pivot;
      if (pivot == n_rows) continue;
      if (pivot != out.rank) swap_rows(m, pivot, out.rank);
      for (std::size_t r = 0; r < n_rows; ++r) {
        if (r != out.rank && bit(m, r, col)) xor_row(m, r, out.rank);
      }
      out.pivots.push_back(col);
      ++out.rank;
    }
    return out;
  }

  std::size_t unknowns_;
  std::size_t words_;
  std::vector<std::uint64_t> rows_;
};

}  // namespace edcnc::gf2
