#pragma once

// Stream cipher used for selective payload encryption.
//
// XorShiftCipher is simulation-grade and NOT cryptographically secure. It is
// fully deterministic so that frames are bit-exact across implementations.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>

#include "edcnc/bitstream.hpp"

namespace edcnc {

struct SessionKey {
  std::uint64_t value = 0;
  friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

inline constexpr std::uint64_t kKeystreamFallbackSeed = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kKeystreamMultiplier = 0x2545F4914F6CDD1DULL;

/// One xorshift scramble step.
constexpr std::uint64_t keystream_step(std::uint64_t s) noexcept {
  s ^= s >> 12;
  s ^= s << 25;
  s ^= s >> 27;
  return s;
}

inline Bytes keystream(std::uint64_t key, std::uint64_t tag, std::size_t nbytes) {
  std::uint64_t s = key ^ tag;
  if (s == 0) s = kKeystreamFallbackSeed;
  Bytes out;
  out.reserve(nbytes);
  while (out.size() < nbytes) {
    s = keystream_step(s);
    const std::uint64_t block = s * kKeystreamMultiplier;
    for (int shift = 56; shift >= 0 && out.size() < nbytes; shift -= 8)
      out.push_back(static_cast<std::uint8_t>(block >> shift));
  }
  return out;
}

template <typename C>
concept PayloadCipher = requires(const C& cipher, std::span<const std::uint8_t> payload, SessionKey key,
                                 std::uint64_t tag) {
  { cipher.encrypt(payload, key, tag) } -> std::same_as<Bytes>;
  { cipher.decrypt(payload, key, tag) } -> std::same_as<Bytes>;
};

struct XorShiftCipher {
  [[nodiscard]] Bytes encrypt(std::span<const std::uint8_t> payload, SessionKey key, std::uint64_t tag) const {
    Bytes out(payload.begin(), payload.end());
    const Bytes ks = keystream(key.value, tag, out.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= ks[i];
    return out;
  }
  [[nodiscard]] Bytes decrypt(std::span<const std::uint8_t> payload, SessionKey key, std::uint64_t tag) const {
    return encrypt(payload, key, tag);
  }
};

static_assert(PayloadCipher<XorShiftCipher>);

inline Bytes encrypt_payload(std::span<const std::uint8_t> payload, SessionKey key, std::uint64_t tag) {
  return XorShiftCipher{}.encrypt(payload, key, tag);
}

}  // namespace edcnc
