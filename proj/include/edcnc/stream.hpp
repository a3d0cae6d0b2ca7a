#pragma once

#include <cstdint>
#include <string>

#include "edcnc/codec.hpp"

namespace edcnc {

enum class StreamKind : std::uint8_t { Raw = 0, Coded = 1 };

/// Identifies one transmitted stream: x_j (Raw) or c_i (Coded).
struct StreamDescriptor {
  StreamKind kind = StreamKind::Raw;
  std::size_t index = 1;  // raw j or coded i, 1-based
  ShiftTuple tuple;       // empty for raw streams
  bool encrypted = false;

  static StreamDescriptor raw(std::size_t j, bool encrypted) { return {StreamKind::Raw, j, {}, encrypted}; }
  static StreamDescriptor coded(std::size_t i, ShiftTuple t, bool encrypted) {
    return {StreamKind::Coded, i, std::move(t), encrypted};
  }

  [[nodiscard]] bool is_raw() const noexcept { return kind == StreamKind::Raw; }

  /// Stable identity derivable from the frame header alone.
  [[nodiscard]] std::uint32_t ordinal() const noexcept {
    return (static_cast<std::uint32_t>(kind) << 16) | static_cast<std::uint32_t>(index);
  }

  [[nodiscard]] std::string name() const {
    return (is_raw() ? "x" : "c") + std::to_string(index) + (encrypted ? "enc" : "");
  }

  friend bool operator==(const StreamDescriptor&, const StreamDescriptor&) = default;
};

}  // namespace edcnc
