#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edcnc/error.hpp"

namespace edcnc {

using Bytes = std::vector<std::uint8_t>;

/// Head-first binary sequence. Index 0 is the first transmitted bit.
class BitStream {
 public:
  BitStream() = default;
  explicit BitStream(std::size_t length) : bits_(length, 0) {}
  BitStream(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) bits_.push_back(static_cast<std::uint8_t>(b & 1));
  }

  /// Parses a string of '0'/'1' characters.
  static BitStream parse(std::string_view text) {
    BitStream out;
    out.bits_.reserve(text.size());
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::ParseError, "invalid bit character in '" + std::string(text) + "'");
      }
      out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
  }

  /// Head bit lands in the MSB of byte 0; the tail is zero padded.
  static BitStream unpack(std::span<const std::uint8_t> bytes, std::size_t bit_length) {
    if (bytes.size() * 8 < bit_length) {
      throw Error(ErrorCode::LengthError, "not enough bytes for requested bit length");
    }
    BitStream out(bit_length);
    for (std::size_t k = 0; k < bit_length; ++k) {
      out.bits_[k] = static_cast<std::uint8_t>((bytes[k / 8] >> (7 - k % 8)) & 1U);
    }
    return out;
  }

  [[nodiscard]] Bytes pack() const {
    Bytes out((bits_.size() + 7) / 8, 0);
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      if (bits_[k]) out[k / 8] |= static_cast<std::uint8_t>(0x80U >> (k % 8));
    }
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
  [[nodiscard]] bool operator[](std::size_t k) const noexcept { return bits_[k] != 0; }
  void set(std::size_t k, bool value) noexcept { bits_[k] = value ? 1 : 0; }
  void flip(std::size_t k) noexcept { bits_[k] ^= 1U; }

  [[nodiscard]] bool all_zero() const noexcept {
    for (auto b : bits_)
      if (b) return false;
    return true;
  }

  BitStream& operator^=(const BitStream& other) {
    if (other.size() != size()) throw Error(ErrorCode::LengthError, "XOR of unequal-length streams");
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] ^= other.bits_[k];
    return *this;
  }

  friend BitStream operator^(BitStream lhs, const BitStream& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitStream&, const BitStream&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace edcnc
