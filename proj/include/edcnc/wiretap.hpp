#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "edcnc/frame.hpp"
#include "edcnc/topology.hpp"

namespace edcnc {

struct WiretapRecord {
  LinkId link;
  Bytes frame;
  friend bool operator==(const WiretapRecord&, const WiretapRecord&) = default;
};

/// Everything a key-less observer of every link captures during a run.
struct WiretapView {
  std::vector<WiretapRecord> records;

  /// Distinct plaintext coded payloads with their tuples (CRC-valid frames only).
  [[nodiscard]] std::vector<CodedItem> plaintext_coded() const {
    std::vector<CodedItem> out;
    for (const auto& rec : records) {
      UnpackedFrame f;
      try {
        f = frame_unpack(rec.frame);
      } catch (const Error&) {
        continue;
      }
      if (!f.crc_ok || f.opaque || f.descriptor.is_raw()) continue;
      bool seen = false;
      for (const auto& item : out) seen = seen || item.tuple == f.descriptor.tuple;
      if (!seen) out.push_back({f.descriptor.tuple, f.payload});
    }
    return out;
  }

  /// Bit lengths of ciphertexts observed; the only thing encrypted frames reveal.
  [[nodiscard]] std::vector<std::size_t> ciphertext_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& rec : records) {
      try {
        auto f = frame_unpack(rec.frame);
        if (f.opaque) out.push_back(f.payload.size());
      } catch (const Error&) {
      }
    }
    return out;
  }

  friend bool operator==(const WiretapView&, const WiretapView&) = default;
};

}  // namespace edcnc
