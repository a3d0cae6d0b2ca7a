#pragma once

// Synchronous, hop-ordered simulation of one broadcast generation over a
// point-to-multipoint fronthaul. Failures are fail-stop for the whole
// generation; corrupt links flip one bit of every frame they carry.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "edcnc/codec.hpp"
#include "edcnc/frame.hpp"
#include "edcnc/key_registry.hpp"
#include "edcnc/plan.hpp"
#include "edcnc/recovery.hpp"
#include "edcnc/topology.hpp"
#include "edcnc/wiretap.hpp"

namespace edcnc {

struct FailureScenario {
  std::set<LinkId> failed_links;
  std::set<NodeId> failed_relays;
  std::set<LinkId> corrupt_links;
  std::uint64_t seed = 0;
};

struct RelayHop {
  NodeId relay;
  LinkId in;
  LinkId out;
  Bytes received;
  Bytes forwarded;
  friend bool operator==(const RelayHop&, const RelayHop&) = default;
};

struct DestinationResult {
  NodeId node = 0;
  std::vector<Bytes> frames;
  std::vector<StreamDescriptor> expected;
  std::vector<StreamDescriptor> missing;
  bool recovered = false;
  std::optional<Generation> generation;
  DecStats dec_stats;
  std::optional<ErrorCode> error;
  std::size_t extra_round_trips = 0;

  [[nodiscard]] std::size_t received_ok() const noexcept { return expected.size() - missing.size(); }
};

struct ScenarioResult {
  std::vector<DestinationResult> destinations;
  WiretapView wiretap;
  std::vector<RelayHop> relay_hops;
  std::size_t relay_key_denials = 0;
  std::size_t relay_key_grants = 0;

  [[nodiscard]] const DestinationResult& at(NodeId node) const {
    for (const auto& d : destinations)
      if (d.node == node) return d;
    throw Error(ErrorCode::InvalidArgument, "no result for node " + std::to_string(node));
  }

  [[nodiscard]] bool relays_opaque() const {
    return std::all_of(relay_hops.begin(), relay_hops.end(), [](const auto& h) { return h.received == h.forwarded; });
  }
};

inline bool operator==(const DecStats& a, const DecStats& b) {
  return a.d_dec == b.d_dec && a.case_label == b.case_label;
}
inline bool operator==(const DestinationResult& a, const DestinationResult& b) {
  return a.node == b.node && a.frames == b.frames && a.expected == b.expected && a.missing == b.missing &&
         a.recovered == b.recovered && a.generation == b.generation && a.dec_stats == b.dec_stats &&
         a.error == b.error && a.extra_round_trips == b.extra_round_trips;
}
inline bool operator==(const ScenarioResult& a, const ScenarioResult& b) {
  return a.destinations == b.destinations && a.wiretap == b.wiretap && a.relay_hops == b.relay_hops &&
         a.relay_key_denials == b.relay_key_denials && a.relay_key_grants == b.relay_key_grants;
}

/// Plan entries routed to `dest`, in plan order.
inline std::vector<StreamDescriptor> expected_streams(const Topology& topology, const TransmissionPlan& plan,
                                                      NodeId dest) {
  const auto ordinals = topology.incoming(dest);
  std::vector<StreamDescriptor> out;
  for (const auto& e : plan.entries)
    if (std::find(ordinals.begin(), ordinals.end(), e.ordinal()) != ordinals.end()) out.push_back(e);
  return out;
}

namespace detail {

inline void check_plan_matches(const Topology& topology, const TransmissionPlan& plan) {
  std::set<std::uint32_t> planned, routed;
  for (const auto& e : plan.entries) planned.insert(e.ordinal());
  for (const auto& [ordinal, route] : topology.routes()) routed.insert(ordinal);
  if (planned != routed) throw Error(ErrorCode::ConfigError, "plan streams and topology routes differ");
}

inline void corrupt(Bytes& frame, std::uint64_t seed, LinkId link) {
  if (frame.empty()) return;
  std::mt19937_64 rng(seed ^ (std::uint64_t{link} * 0x9E3779B97F4A7C15ULL));
  const std::size_t bit = rng() % (frame.size() * 8);
  frame[bit / 8] ^= static_cast<std::uint8_t>(0x80U >> (bit % 8));
}

}  // namespace detail

inline ScenarioResult run_scenario(const Topology& topology, const Generation& generation,
                                   const TransmissionPlan& plan, const FailureScenario& failures,
                                   GroupRegistry& registry, GroupId group) {
  if (plan.d_raw != generation.d_raw()) throw Error(ErrorCode::ConfigError, "plan d_raw != generation d_raw");
  detail::check_plan_matches(topology, plan);
  for (NodeId n : failures.failed_relays)
    if (topology.role(n) != Role::Relay) throw Error(ErrorCode::ConfigError, "only relays can fail");
  for (LinkId l : failures.failed_links)
    if (l >= topology.links().size()) throw Error(ErrorCode::ConfigError, "unknown failed link");

  const NodeId source = topology.source();
  const SessionKey source_key = registry.request_key(source, group);
  const auto session_id = static_cast<std::uint32_t>(group);

  ScenarioResult result;
  std::map<NodeId, std::vector<Bytes>> inbox;

  auto link_down = [&](const Link& l) {
    return failures.failed_links.contains(l.id) || failures.failed_relays.contains(l.from) ||
           failures.failed_relays.contains(l.to);
  };

  for (const auto& entry : plan.entries) {
    const BitStream payload =
        entry.is_raw() ? generation.stream(entry.index) : encode(generation, entry.tuple, entry.index).payload;
    const Bytes frame = frame_pack(entry, session_id, generation.id(), payload, source_key);
    const Route& route = topology.routes().at(entry.ordinal());

    // Breadth-first over the route tree; siblings leave in link-id order.
    std::deque<std::pair<NodeId, std::pair<std::optional<LinkId>, Bytes>>> pending;
    pending.push_back({source, {std::nullopt, frame}});
    while (!pending.empty()) {
      auto [node, arrival] = std::move(pending.front());
      pending.pop_front();
      const auto& [in_link, bytes] = arrival;
      for (LinkId id : route.links) {
        const Link& l = topology.link(id);
        if (l.from != node || link_down(l)) continue;
        Bytes on_wire = bytes;
        if (failures.corrupt_links.contains(id)) detail::corrupt(on_wire, failures.seed, id);
        if (topology.role(node) == Role::Relay)
          result.relay_hops.push_back({node, *in_link, id, bytes, bytes});
        result.wiretap.records.push_back({id, on_wire});
        if (topology.role(l.to) == Role::Destination) {
          inbox[l.to].push_back(std::move(on_wire));
        } else {
          pending.push_back({l.to, {id, std::move(on_wire)}});
        }
      }
    }
  }

  // Relays are outside the group; every attempt to fetch the key is refused.
  for (NodeId relay : topology.with_role(Role::Relay)) {
    if (failures.failed_relays.contains(relay)) continue;
    try {
      (void)registry.request_key(relay, group);
      ++result.relay_key_grants;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unauthorized) throw;
      ++result.relay_key_denials;
    }
  }

  for (NodeId dest : topology.with_role(Role::Destination)) {
    DestinationResult d;
    d.node = dest;
    d.frames = inbox[dest];
    d.expected = expected_streams(topology, plan, dest);
    const SessionKey key = registry.request_key(dest, group);
    auto report = try_destination_recover(d.frames, key, plan, generation.length(), d.expected);
    d.missing = std::move(report.missing);
    d.dec_stats = report.stats;
    d.error = report.error;
    d.generation = std::move(report.generation);
    d.recovered = d.generation.has_value();
    result.destinations.push_back(std::move(d));
  }
  return result;
}

/// Per destination, the largest f such that every f-subset of its incoming
/// streams may fail and the rest still decode at length l. -1 if even the
/// full incoming set does not decode.
inline std::map<NodeId, int> tolerance_map(const Topology& topology, std::size_t d_raw, const TransmissionPlan& plan,
                                           std::size_t l = kDefaultSearchLength) {
  std::map<NodeId, int> out;
  for (NodeId dest : topology.with_role(Role::Destination)) {
    const auto incoming = expected_streams(topology, plan, dest);
    const std::size_t n = incoming.size();
    int tolerance = -1;
    for (std::size_t f = 0; f <= n; ++f) {
      bool all_ok = true;
      std::vector<bool> lost(n, false);
      std::fill(lost.begin(), lost.begin() + static_cast<std::ptrdiff_t>(f), true);
      do {
        ItemKinds kinds;
        for (std::size_t s = 0; s < n; ++s) {
          if (lost[s]) continue;
          if (incoming[s].is_raw()) {
            kinds.raw.push_back(incoming[s].index);
          } else {
            kinds.coded.push_back(incoming[s].tuple);
          }
        }
        all_ok = decodable(kinds, d_raw, l);
      } while (all_ok && std::prev_permutation(lost.begin(), lost.end()));
      if (!all_ok) break;
      tolerance = static_cast<int>(f);
    }
    out[dest] = tolerance;
  }
  return out;
}

}  // namespace edcnc
