#pragma once

// Shifted-XOR network coding over GF(2).
//
// A coded stream is described by a ShiftTuple (r_1..r_N): raw stream j is
// prepended with r_j zero bits, every shifted stream is zero padded to
// L + max(r), and the results are XORed together. Decoding treats every
// received item as a set of GF(2) equations over the N*L raw bits.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "edcnc/bitstream.hpp"
#include "edcnc/error.hpp"
#include "edcnc/gf2.hpp"

namespace edcnc {

/// Per-raw-stream count of zero bits prepended at the head.
struct ShiftTuple {
  std::vector<std::uint32_t> shifts;

  ShiftTuple() = default;
  ShiftTuple(std::initializer_list<std::uint32_t> s) : shifts(s) {}
  explicit ShiftTuple(std::vector<std::uint32_t> s) : shifts(std::move(s)) {}

  [[nodiscard]] std::size_t arity() const noexcept { return shifts.size(); }
  [[nodiscard]] std::uint32_t max_shift() const noexcept {
    return shifts.empty() ? 0 : *std::max_element(shifts.begin(), shifts.end());
  }
  [[nodiscard]] std::uint32_t operator[](std::size_t j) const noexcept { return shifts[j]; }

  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < shifts.size(); ++j) {
      if (j) out.push_back(',');
      out += std::to_string(shifts[j]);
    }
    return out;
  }

  friend bool operator==(const ShiftTuple&, const ShiftTuple&) = default;
  friend auto operator<=>(const ShiftTuple&, const ShiftTuple&) = default;
};

using ShiftMatrix = std::vector<ShiftTuple>;

/// Raw streams encoded together. All members share one length L >= 1.
class Generation {
 public:
  Generation(std::vector<BitStream> streams, std::uint32_t generation_id = 0)
      : id_(generation_id), streams_(std::move(streams)) {
    if (streams_.empty()) throw Error(ErrorCode::InvalidArgument, "generation needs at least one stream");
    const std::size_t len = streams_.front().size();
    if (len == 0) throw Error(ErrorCode::LengthError, "streams must have length >= 1");
    for (const auto& s : streams_) {
      if (s.size() != len) throw Error(ErrorCode::LengthError, "generation streams differ in length");
    }
  }

  [[nodiscard]] std::uint32_t id() const noexcept { return id_; }
  [[nodiscard]] std::size_t d_raw() const noexcept { return streams_.size(); }
  [[nodiscard]] std::size_t length() const noexcept { return streams_.front().size(); }
  [[nodiscard]] const std::vector<BitStream>& streams() const noexcept { return streams_; }
  /// 1-based, matching x_1..x_N.
  [[nodiscard]] const BitStream& stream(std::size_t j) const { return streams_.at(j - 1); }

  friend Generation operator^(const Generation& a, const Generation& b) {
    if (a.d_raw() != b.d_raw()) throw Error(ErrorCode::ArityError, "generation XOR needs equal stream counts");
    std::vector<BitStream> out;
    out.reserve(a.d_raw());
    for (std::size_t j = 0; j < a.d_raw(); ++j) out.push_back(a.streams_[j] ^ b.streams_[j]);
    return Generation(std::move(out), a.id_);
  }

  /// Compares payload only; the generation id is transport metadata.
  friend bool operator==(const Generation& a, const Generation& b) { return a.streams_ == b.streams_; }

 private:
  std::uint32_t id_;
  std::vector<BitStream> streams_;
};

struct CodedStream {
  BitStream payload;
  ShiftTuple tuple;
  std::size_t coded_index = 1;
};

struct RawItem {
  std::size_t stream_index;  // 1-based
  BitStream payload;
};

struct CodedItem {
  ShiftTuple tuple;
  BitStream payload;
};

/// What a receiver holds for one generation.
class ReceivedSet {
 public:
  using Item = std::variant<RawItem, CodedItem>;

  void add_raw(std::size_t stream_index, BitStream payload) {
    for (const auto& item : items_) {
      if (const auto* raw = std::get_if<RawItem>(&item); raw && raw->stream_index == stream_index)
        throw Error(ErrorCode::InvalidArgument, "duplicate raw item " + std::to_string(stream_index));
    }
    items_.emplace_back(RawItem{stream_index, std::move(payload)});
  }

  void add_coded(ShiftTuple tuple, BitStream payload) {
    for (const auto& item : items_) {
      if (const auto* coded = std::get_if<CodedItem>(&item); coded && coded->tuple == tuple)
        throw Error(ErrorCode::InvalidArgument, "duplicate coded item (" + tuple.to_string() + ")");
    }
    items_.emplace_back(CodedItem{std::move(tuple), std::move(payload)});
  }

  [[nodiscard]] const std::vector<Item>& items() const noexcept { return items_; }
  [[nodiscard]] bool empty() const noexcept { return items_.empty(); }

 private:
  std::vector<Item> items_;
};

/// The shape of a ReceivedSet with payloads stripped.
struct ItemKinds {
  std::vector<std::size_t> raw;
  std::vector<ShiftTuple> coded;

  static ItemKinds of(const ReceivedSet& received) {
    ItemKinds kinds;
    for (const auto& item : received.items()) {
      if (const auto* raw = std::get_if<RawItem>(&item)) {
        kinds.raw.push_back(raw->stream_index);
      } else {
        kinds.coded.push_back(std::get<CodedItem>(item).tuple);
      }
    }
    return kinds;
  }
};

inline BitStream shift_pad(const BitStream& x, std::size_t r, std::size_t out_len) {
  if (out_len < r + x.size()) {
    throw Error(ErrorCode::LengthError, "shift_pad: out_len " + std::to_string(out_len) + " < r + len = " +
                                            std::to_string(r + x.size()));
  }
  BitStream out(out_len);
  for (std::size_t k = 0; k < x.size(); ++k) out.set(r + k, x[k]);
  return out;
}

inline CodedStream encode(const Generation& gen, const ShiftTuple& tuple, std::size_t coded_index = 1) {
  if (tuple.arity() != gen.d_raw()) {
    throw Error(ErrorCode::ArityError, "tuple arity " + std::to_string(tuple.arity()) + " != d_raw " +
                                           std::to_string(gen.d_raw()));
  }
  const std::size_t out_len = gen.length() + tuple.max_shift();
  BitStream payload(out_len);
  for (std::size_t j = 0; j < gen.d_raw(); ++j) payload ^= shift_pad(gen.streams()[j], tuple[j], out_len);
  return {std::move(payload), tuple, coded_index};
}

namespace detail {

inline void check_kinds(const ItemKinds& kinds, std::size_t d_raw) {
  for (std::size_t j : kinds.raw) {
    if (j < 1 || j > d_raw) throw Error(ErrorCode::InvalidArgument, "raw index out of range");
  }
  for (const auto& t : kinds.coded) {
    if (t.arity() != d_raw) throw Error(ErrorCode::ArityError, "coded tuple arity does not match d_raw");
  }
}

// Unknown (stream j, bit k) maps to column j*l + k, j 0-based.
inline void add_raw_equations(gf2::LinearSystem& sys, std::size_t j, std::size_t l, const BitStream* payload) {
  for (std::size_t k = 0; k < l; ++k) {
    const std::size_t var = (j - 1) * l + k;
    sys.add_equation(std::span(&var, 1), payload ? (*payload)[k] : false);
  }
}

inline void add_coded_equations(gf2::LinearSystem& sys, const ShiftTuple& t, std::size_t l,
                                const BitStream* payload) {
  const std::size_t out_len = l + t.max_shift();
  std::vector<std::size_t> vars;
  for (std::size_t pos = 0; pos < out_len; ++pos) {
    vars.clear();
    for (std::size_t j = 0; j < t.arity(); ++j) {
      if (pos >= t[j] && pos - t[j] < l) vars.push_back(j * l + (pos - t[j]));
    }
    sys.add_equation(vars, payload ? (*payload)[pos] : false);
  }
}

inline std::string cache_key(const ItemKinds& kinds, std::size_t d_raw, std::size_t l) {
  auto raw = kinds.raw;
  auto coded = kinds.coded;
  std::sort(raw.begin(), raw.end());
  std::sort(coded.begin(), coded.end());
  std::string key = std::to_string(d_raw) + "/" + std::to_string(l) + "/";
  for (auto j : raw) key += std::to_string(j) + ",";
  key += "/";
  for (const auto& t : coded) key += t.to_string() + ";";
  return key;
}

// Read-through memo for decodable(); results never depend on whether a hit occurs.
class DecodableCache {
 public:
  std::optional<bool> find(const std::string& key) {
    std::lock_guard lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, bool value) {
    std::lock_guard lock(mu_);
    if (map_.size() > kMaxEntries) map_.clear();
    map_.emplace(key, value);
  }
  static DecodableCache& instance() {
    static DecodableCache cache;
    return cache;
  }

 private:
  static constexpr std::size_t kMaxEntries = 1 << 16;
  std::mutex mu_;
  std::map<std::string, bool> map_;
};

}  // namespace detail

/// True iff the items determine all d_raw * l raw bits.
inline bool decodable(const ItemKinds& kinds, std::size_t d_raw, std::size_t l) {
  if (l == 0) throw Error(ErrorCode::LengthError, "decodable: l must be >= 1");
  detail::check_kinds(kinds, d_raw);
  const auto key = detail::cache_key(kinds, d_raw, l);
  auto& cache = detail::DecodableCache::instance();
  if (auto hit = cache.find(key)) return *hit;

  gf2::LinearSystem sys(d_raw * l);
  for (std::size_t j : kinds.raw) detail::add_raw_equations(sys, j, l, nullptr);
  for (const auto& t : kinds.coded) detail::add_coded_equations(sys, t, l, nullptr);
  const bool result = sys.rank() == d_raw * l;
  cache.store(key, result);
  return result;
}

inline Generation decode(const ReceivedSet& received, std::size_t d_raw, std::size_t l,
                         std::uint32_t generation_id = 0) {
  if (l == 0) throw Error(ErrorCode::LengthError, "decode: l must be >= 1");
  if (d_raw == 0) throw Error(ErrorCode::InvalidArgument, "decode: d_raw must be >= 1");
  detail::check_kinds(ItemKinds::of(received), d_raw);

  gf2::LinearSystem sys(d_raw * l);
  for (const auto& item : received.items()) {
    if (const auto* raw = std::get_if<RawItem>(&item)) {
      if (raw->payload.size() != l) throw Error(ErrorCode::LengthError, "raw payload length != l");
      detail::add_raw_equations(sys, raw->stream_index, l, &raw->payload);
    } else {
      const auto& coded = std::get<CodedItem>(item);
      if (coded.payload.size() != l + coded.tuple.max_shift())
        throw Error(ErrorCode::LengthError, "coded payload length != l + max shift");
      detail::add_coded_equations(sys, coded.tuple, l, &coded.payload);
    }
  }

  auto solution = sys.solve();
  switch (solution.outcome) {
    case gf2::LinearSystem::Outcome::Inconsistent:
      throw Error(ErrorCode::Inconsistent, "received items admit no generation");
    case gf2::LinearSystem::Outcome::Underdetermined:
      throw Error(ErrorCode::Unsolvable, "rank " + std::to_string(solution.rank) + " < " +
                                             std::to_string(d_raw * l));
    case gf2::LinearSystem::Outcome::Unique:
      break;
  }
  std::vector<BitStream> streams(d_raw, BitStream(l));
  for (std::size_t j = 0; j < d_raw; ++j)
    for (std::size_t k = 0; k < l; ++k) streams[j].set(k, solution.values[j * l + k] != 0);
  return Generation(std::move(streams), generation_id);
}

inline constexpr std::uint32_t kDefaultMaxShift = 16;

namespace detail {

// Every choice of k raw indices plus (d_raw - k) tuples that includes the
// tuple at position `newest` must be decodable.
inline bool subsets_decodable(const ShiftMatrix& matrix, std::size_t newest, std::size_t d_raw, std::size_t l) {
  const std::size_t m = matrix.size();
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < m; ++i)
    if (i != newest) others.push_back(i);

  for (std::size_t n_coded = 1; n_coded <= std::min(d_raw, m); ++n_coded) {
    const std::size_t k = d_raw - n_coded;
    // raw index subsets of size k
    std::vector<bool> raw_sel(d_raw, false);
    std::fill(raw_sel.begin(), raw_sel.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      ItemKinds base;
      for (std::size_t j = 0; j < d_raw; ++j)
        if (raw_sel[j]) base.raw.push_back(j + 1);
      // other-tuple subsets of size n_coded - 1
      std::vector<bool> coded_sel(others.size(), false);
      std::fill(coded_sel.begin(), coded_sel.begin() + static_cast<std::ptrdiff_t>(n_coded - 1), true);
      do {
        ItemKinds kinds = base;
        kinds.coded.push_back(matrix[newest]);
        for (std::size_t i = 0; i < others.size(); ++i)
          if (coded_sel[i]) kinds.coded.push_back(matrix[others[i]]);
        if (!decodable(kinds, d_raw, l)) return false;
      } while (std::prev_permutation(coded_sel.begin(), coded_sel.end()));
    } while (std::prev_permutation(raw_sel.begin(), raw_sel.end()));
  }
  return true;
}

// Advances to the next tuple (lexicographic) with r_1 = 0 and distinct entries.
inline bool next_candidate(ShiftTuple& t, std::uint32_t max_shift) {
  auto distinct = [](const ShiftTuple& c) {
    auto s = c.shifts;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  };
  while (true) {
    bool advanced = false;
    for (std::size_t pos = t.arity(); pos > 1 && !advanced;) {
      --pos;
      if (t.shifts[pos] < max_shift) {
        ++t.shifts[pos];
        advanced = true;
      } else {
        t.shifts[pos] = 0;
      }
    }
    if (!advanced) return false;
    if (distinct(t)) return true;
  }
}

inline bool search_from(ShiftMatrix& matrix, std::size_t n_coded, std::size_t d_raw, std::size_t l,
                        std::uint32_t max_shift) {
  if (matrix.size() == n_coded) return true;
  ShiftTuple candidate(std::vector<std::uint32_t>(d_raw, 0));
  while (next_candidate(candidate, max_shift)) {
    if (std::find(matrix.begin(), matrix.end(), candidate) != matrix.end()) continue;
    matrix.push_back(candidate);
    if (subsets_decodable(matrix, matrix.size() - 1, d_raw, l) &&
        search_from(matrix, n_coded, d_raw, l, max_shift))
      return true;
    matrix.pop_back();
  }
  return false;
}

}  // namespace detail

/// Lexicographically first matrix (over the flattened shifts) in which every
/// tuple has r_1 = 0 and distinct entries, and any d_raw items drawn from
/// {raw streams} plus the returned tuples decode at length l.
inline ShiftMatrix search_shift_matrix(std::size_t d_raw, std::size_t n_coded, std::size_t l,
                                       std::uint32_t max_shift = kDefaultMaxShift) {
  if (d_raw < 2 || n_coded < 1 || l < 1) throw Error(ErrorCode::DomainError, "search_shift_matrix preconditions");
  ShiftMatrix matrix;
  if (!detail::search_from(matrix, n_coded, d_raw, l, max_shift)) {
    throw Error(ErrorCode::SearchExhausted, "no shift matrix with max shift " + std::to_string(max_shift));
  }
  return matrix;
}

inline constexpr std::size_t kDefaultSearchLength = 8;

/// Built-in matrices for two and three raw streams; other shapes are searched.
inline ShiftMatrix default_shift_matrix(std::size_t d_raw, std::size_t n_coded,
                                        std::size_t search_length = kDefaultSearchLength) {
  if (d_raw < 2 || n_coded < 1) throw Error(ErrorCode::DomainError, "default_shift_matrix preconditions");
  static const ShiftMatrix two{{0, 1}, {0, 2}};
  static const ShiftMatrix three{{0, 1, 2}, {0, 2, 1}, {0, 3, 5}};
  const ShiftMatrix* builtin = d_raw == 2 ? &two : d_raw == 3 ? &three : nullptr;
  if (builtin && n_coded <= builtin->size()) {
    return ShiftMatrix(builtin->begin(), builtin->begin() + static_cast<std::ptrdiff_t>(n_coded));
  }
  return search_shift_matrix(d_raw, n_coded, search_length);
}

}  // namespace edcnc
