#pragma once

#include <cstdint>
#include <span>

#include <boost/crc.hpp>

namespace edcnc {

/// IEEE 802.3 CRC-32 (reflected 0xEDB88320, init and final XOR all-ones).
inline std::uint32_t crc32(std::span<const std::uint8_t> data) {
  boost::crc_32_type crc;
  crc.process_bytes(data.data(), data.size());
  return crc.checksum();
}

}  // namespace edcnc
