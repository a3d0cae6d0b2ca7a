#pragma once

// Wire format (big-endian integers):
//
//   0..3   magic "eDCN"            13  kind (0 raw, 1 coded)
//   4      version (1)             14  index (raw j or coded i)
//   5..8   session id              15  encrypted flag
//   9..12  generation id           16  tuple arity T (0 for raw)
//   17..   T x u16 shifts, u32 orig_bit_len, u32 payload byte count,
//          payload bytes, u32 crc32 over everything before it

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "edcnc/bitstream.hpp"
#include "edcnc/cipher.hpp"
#include "edcnc/crc32.hpp"
#include "edcnc/error.hpp"
#include "edcnc/stream.hpp"

namespace edcnc {

inline constexpr std::array<std::uint8_t, 4> kFrameMagic{0x65, 0x44, 0x43, 0x4E};
inline constexpr std::uint8_t kFrameVersion = 1;

/// Per-stream keystream tag; derivable by a receiver from the header alone.
constexpr std::uint64_t frame_tag(std::uint32_t session_id, std::uint32_t generation_id,
                                  std::uint32_t descriptor_ordinal) noexcept {
  return (std::uint64_t{session_id} << 32) | std::uint64_t{generation_id ^ descriptor_ordinal};
}

struct UnpackedFrame {
  StreamDescriptor descriptor;
  std::uint32_t session_id = 0;
  std::uint32_t generation_id = 0;
  BitStream payload;
  bool opaque = false;  // still ciphered
  bool crc_ok = false;
};

namespace detail {

inline void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::span<const std::uint8_t> take(std::size_t n) {
    if (data_.size() - pos_ < n) throw Error(ErrorCode::Truncated, "frame ends before expected field");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint8_t u8() { return take(1)[0]; }
  std::uint16_t u16() {
    auto b = take(2);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }
  std::uint32_t u32() {
    auto b = take(4);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
  }
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }
  [[nodiscard]] std::size_t remaining() const noexcept { return data_.size() - pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <PayloadCipher Cipher = XorShiftCipher>
Bytes frame_pack(const StreamDescriptor& descriptor, std::uint32_t session_id, std::uint32_t generation_id,
                 const BitStream& payload_bits, SessionKey key, const Cipher& cipher = {}) {
  if (descriptor.index > 0xFF) throw Error(ErrorCode::InvalidArgument, "stream index does not fit in one byte");
  if (descriptor.tuple.arity() > 0xFF) throw Error(ErrorCode::InvalidArgument, "tuple arity too large");

  Bytes out(kFrameMagic.begin(), kFrameMagic.end());
  out.push_back(kFrameVersion);
  detail::put_u32(out, session_id);
  detail::put_u32(out, generation_id);
  out.push_back(static_cast<std::uint8_t>(descriptor.kind));
  out.push_back(static_cast<std::uint8_t>(descriptor.index));
  out.push_back(descriptor.encrypted ? 1 : 0);
  out.push_back(static_cast<std::uint8_t>(descriptor.tuple.arity()));
  for (auto shift : descriptor.tuple.shifts) {
    if (shift > 0xFFFF) throw Error(ErrorCode::InvalidArgument, "shift does not fit in 16 bits");
    detail::put_u16(out, static_cast<std::uint16_t>(shift));
  }
  detail::put_u32(out, static_cast<std::uint32_t>(payload_bits.size()));

  Bytes body = payload_bits.pack();
  if (descriptor.encrypted)
    body = cipher.encrypt(body, key, frame_tag(session_id, generation_id, descriptor.ordinal()));
  detail::put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  detail::put_u32(out, crc32(out));
  return out;
}

/// Decrypts an opaque payload in place. No-op for plaintext frames.
template <PayloadCipher Cipher = XorShiftCipher>
void open_frame(UnpackedFrame& frame, SessionKey key, const Cipher& cipher = {}) {
  if (!frame.opaque) return;
  const Bytes clear = cipher.decrypt(frame.payload.pack(), key,
                                     frame_tag(frame.session_id, frame.generation_id, frame.descriptor.ordinal()));
  frame.payload = BitStream::unpack(clear, frame.payload.size());
  frame.opaque = false;
}

template <PayloadCipher Cipher = XorShiftCipher>
UnpackedFrame frame_unpack(std::span<const std::uint8_t> bytes, std::optional<SessionKey> key = std::nullopt,
                           const Cipher& cipher = {}) {
  detail::Reader in(bytes);
  auto magic = in.take(4);
  if (!std::equal(magic.begin(), magic.end(), kFrameMagic.begin())) throw Error(ErrorCode::BadMagic, "not an eDCN frame");
  if (in.u8() != kFrameVersion) throw Error(ErrorCode::BadVersion, "unsupported frame version");

  UnpackedFrame frame;
  frame.session_id = in.u32();
  frame.generation_id = in.u32();
  const std::uint8_t kind = in.u8();
  if (kind > 1) throw Error(ErrorCode::BadMagic, "unknown descriptor kind");
  frame.descriptor.kind = static_cast<StreamKind>(kind);
  frame.descriptor.index = in.u8();
  frame.descriptor.encrypted = in.u8() != 0;
  const std::uint8_t arity = in.u8();
  for (std::uint8_t t = 0; t < arity; ++t) frame.descriptor.tuple.shifts.push_back(in.u16());
  const std::uint32_t bit_len = in.u32();
  const std::uint32_t byte_len = in.u32();
  if (byte_len != (std::uint64_t{bit_len} + 7) / 8)
    throw Error(ErrorCode::Truncated, "payload byte count disagrees with bit length");
  auto body = in.take(byte_len);
  const std::size_t covered = in.position();
  const std::uint32_t stored_crc = in.u32();
  if (in.remaining() != 0) throw Error(ErrorCode::Truncated, "trailing bytes after frame");

  frame.crc_ok = crc32(bytes.first(covered)) == stored_crc;
  frame.payload = BitStream::unpack(body, bit_len);
  frame.opaque = frame.descriptor.encrypted;
  if (key) open_frame(frame, *key, cipher);
  return frame;
}

}  // namespace edcnc
