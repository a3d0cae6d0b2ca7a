#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "edcnc/codec.hpp"
#include "edcnc/error.hpp"
#include "edcnc/stream.hpp"

namespace edcnc {

/// Which streams the source transmits and which of them it encrypts.
///
/// Entries: x_1 and x_N (encrypted), c_1..c_{N-1} (plaintext, throughput),
/// c_N..c_{N-1+L_f} (encrypted, protection). Total N + L_f + 1 streams, of
/// which L_f + 2 are encrypted.
struct TransmissionPlan {
  std::size_t d_raw = 0;
  std::size_t l_f = 0;
  std::vector<StreamDescriptor> entries;

  [[nodiscard]] std::size_t total() const noexcept { return entries.size(); }
  [[nodiscard]] std::size_t encrypted_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.encrypted; }));
  }
  [[nodiscard]] const StreamDescriptor* find(std::uint32_t ordinal) const noexcept {
    for (const auto& e : entries)
      if (e.ordinal() == ordinal) return &e;
    return nullptr;
  }
  [[nodiscard]] ShiftMatrix matrix() const {
    ShiftMatrix out;
    for (const auto& e : entries)
      if (!e.is_raw()) out.push_back(e.tuple);
    return out;
  }
};

inline TransmissionPlan plan_transmission(std::size_t d_raw, std::size_t l_f, const ShiftMatrix& matrix) {
  if (d_raw < 2 || l_f < 1) throw Error(ErrorCode::DomainError, "plan_transmission requires d_raw >= 2, l_f >= 1");
  if (matrix.size() != d_raw - 1 + l_f) {
    throw Error(ErrorCode::ArityError, "matrix has " + std::to_string(matrix.size()) + " tuples, expected " +
                                           std::to_string(d_raw - 1 + l_f));
  }
  for (const auto& t : matrix)
    if (t.arity() != d_raw) throw Error(ErrorCode::ArityError, "tuple arity != d_raw");

  TransmissionPlan plan{d_raw, l_f, {}};
  plan.entries.push_back(StreamDescriptor::raw(1, true));
  plan.entries.push_back(StreamDescriptor::raw(d_raw, true));
  for (std::size_t i = 1; i <= matrix.size(); ++i)
    plan.entries.push_back(StreamDescriptor::coded(i, matrix[i - 1], /*encrypted=*/i >= d_raw));
  return plan;
}

/// Plan with the default shift matrix for the shape.
inline TransmissionPlan default_plan(std::size_t d_raw, std::size_t l_f) {
  return plan_transmission(d_raw, l_f, default_shift_matrix(d_raw, d_raw - 1 + l_f));
}

}  // namespace edcnc
