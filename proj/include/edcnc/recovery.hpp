#pragma once

// Destination-side recovery. Plaintext coded frames are used without any
// decryption; encrypted frames are opened one at a time (raw streams first,
// then encrypted coded streams by ascending index) until the collected items
// determine the generation.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edcnc/codec.hpp"
#include "edcnc/frame.hpp"
#include "edcnc/plan.hpp"

namespace edcnc {

enum class RecoveryCase { A, B, C };

constexpr char to_char(RecoveryCase c) noexcept { return c == RecoveryCase::A ? 'a' : c == RecoveryCase::B ? 'b' : 'c'; }

struct DecStats {
  std::size_t d_dec = 0;
  RecoveryCase case_label = RecoveryCase::A;
};

struct RecoveryReport {
  std::optional<Generation> generation;
  DecStats stats;
  std::optional<ErrorCode> error;
  std::vector<StreamDescriptor> missing;  // expected but not correctly received
};

/// Case a: nothing missing. Case b: exactly one encrypted stream missing.
/// Case c: anything else.
inline RecoveryCase classify_losses(std::span<const StreamDescriptor> missing) {
  if (missing.empty()) return RecoveryCase::A;
  if (missing.size() == 1 && missing.front().encrypted) return RecoveryCase::B;
  return RecoveryCase::C;
}

template <PayloadCipher Cipher = XorShiftCipher>
RecoveryReport try_destination_recover(std::span<const Bytes> frames, SessionKey key, const TransmissionPlan& plan,
                                       std::size_t l, std::span<const StreamDescriptor> expected,
                                       const Cipher& cipher = {}) {
  RecoveryReport report;

  std::vector<UnpackedFrame> good;
  std::optional<std::uint32_t> generation_id;
  for (const auto& bytes : frames) {
    UnpackedFrame f;
    try {
      f = frame_unpack(bytes, std::nullopt, cipher);
    } catch (const Error&) {
      continue;
    }
    if (!f.crc_ok) continue;
    const auto* planned = plan.find(f.descriptor.ordinal());
    if (!planned || *planned != f.descriptor) continue;
    if (std::any_of(good.begin(), good.end(),
                    [&](const auto& g) { return g.descriptor.ordinal() == f.descriptor.ordinal(); }))
      continue;
    if (!generation_id) generation_id = f.generation_id;
    good.push_back(std::move(f));
  }

  for (const auto& e : expected) {
    const bool got = std::any_of(good.begin(), good.end(), [&](const auto& g) { return g.descriptor == e; });
    if (!got) report.missing.push_back(e);
  }
  report.stats.case_label = classify_losses(report.missing);

  ReceivedSet received;
  auto add = [&](const UnpackedFrame& f) {
    if (f.descriptor.is_raw()) {
      received.add_raw(f.descriptor.index, f.payload);
    } else {
      received.add_coded(f.descriptor.tuple, f.payload);
    }
  };

  std::vector<UnpackedFrame*> sealed;
  for (auto& f : good) {
    if (f.opaque) {
      sealed.push_back(&f);
    } else {
      add(f);
    }
  }
  std::stable_sort(sealed.begin(), sealed.end(), [](const UnpackedFrame* a, const UnpackedFrame* b) {
    if (a->descriptor.kind != b->descriptor.kind) return a->descriptor.is_raw();
    return a->descriptor.index < b->descriptor.index;
  });

  auto next = sealed.begin();
  try {
    while (received.empty() || !decodable(ItemKinds::of(received), plan.d_raw, l)) {
      if (next == sealed.end()) throw Error(ErrorCode::Unrecoverable, "more losses than the plan tolerates");
      open_frame(**next, key, cipher);
      ++report.stats.d_dec;
      add(**next);
      ++next;
    }
    report.generation = decode(received, plan.d_raw, l, generation_id.value_or(0));
  } catch (const Error& e) {
    report.error = e.code();
  }
  return report;
}

/// Throwing form of try_destination_recover.
template <PayloadCipher Cipher = XorShiftCipher>
std::pair<Generation, DecStats> destination_recover(std::span<const Bytes> frames, SessionKey key,
                                                    const TransmissionPlan& plan, std::size_t l,
                                                    std::span<const StreamDescriptor> expected,
                                                    const Cipher& cipher = {}) {
  auto report = try_destination_recover(frames, key, plan, l, expected, cipher);
  if (report.error) throw Error(*report.error, "destination recovery failed");
  return {std::move(*report.generation), report.stats};
}

}  // namespace edcnc
