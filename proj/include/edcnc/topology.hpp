#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edcnc/error.hpp"
#include "edcnc/key_registry.hpp"
#include "edcnc/stream.hpp"

namespace edcnc {

using LinkId = std::uint32_t;

enum class Role { Source, Relay, Destination, KeyServer };

struct Link {
  LinkId id;
  NodeId from;
  NodeId to;

  [[nodiscard]] std::string name() const { return std::to_string(from) + "->" + std::to_string(to); }
};

/// Multicast tree carrying one stream from the source to its destinations.
struct Route {
  StreamKind kind;
  std::size_t index;
  std::vector<LinkId> links;  // ascending link id
};

inline std::uint32_t stream_ordinal(StreamKind kind, std::size_t index) {
  return StreamDescriptor{kind, index, {}, false}.ordinal();
}

class Topology {
 public:
  void add_node(NodeId id, Role role) {
    if (!nodes_.emplace(id, role).second) throw Error(ErrorCode::ConfigError, "duplicate node " + std::to_string(id));
  }

  LinkId add_link(NodeId from, NodeId to) {
    if (!nodes_.contains(from) || !nodes_.contains(to)) throw Error(ErrorCode::ConfigError, "link endpoint unknown");
    if (auto existing = find_link(from, to)) return *existing;
    const auto id = static_cast<LinkId>(links_.size());
    links_.push_back({id, from, to});
    return id;
  }

  /// Adds a route given as node paths from the source, one per destination.
  void add_route(StreamKind kind, std::size_t index, const std::vector<std::vector<NodeId>>& paths) {
    Route route{kind, index, {}};
    for (const auto& path : paths) {
      if (path.size() < 2) throw Error(ErrorCode::ConfigError, "route path needs at least two nodes");
      if (role(path.front()) != Role::Source || role(path.back()) != Role::Destination)
        throw Error(ErrorCode::ConfigError, "route must run from the source to a destination");
      for (std::size_t h = 1; h + 1 < path.size(); ++h)
        if (role(path[h]) != Role::Relay) throw Error(ErrorCode::ConfigError, "route interior must be relays");
      for (std::size_t h = 0; h + 1 < path.size(); ++h) route.links.push_back(add_link(path[h], path[h + 1]));
    }
    std::sort(route.links.begin(), route.links.end());
    route.links.erase(std::unique(route.links.begin(), route.links.end()), route.links.end());
    if (!routes_.emplace(stream_ordinal(kind, index), std::move(route)).second)
      throw Error(ErrorCode::ConfigError, "duplicate route");
  }

  [[nodiscard]] Role role(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error(ErrorCode::ConfigError, "unknown node " + std::to_string(id));
    return it->second;
  }

  [[nodiscard]] std::optional<LinkId> find_link(NodeId from, NodeId to) const {
    for (const auto& l : links_)
      if (l.from == from && l.to == to) return l.id;
    return std::nullopt;
  }

  /// Parses "A->B".
  [[nodiscard]] LinkId link_by_name(const std::string& name) const {
    const auto arrow = name.find("->");
    if (arrow == std::string::npos) throw Error(ErrorCode::ConfigError, "link must be written A->B: " + name);
    try {
      const auto from = static_cast<NodeId>(std::stoul(name.substr(0, arrow)));
      const auto to = static_cast<NodeId>(std::stoul(name.substr(arrow + 2)));
      if (auto id = find_link(from, to)) return *id;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigError, "bad link name " + name);
    }
    throw Error(ErrorCode::ConfigError, "no such link " + name);
  }

  [[nodiscard]] const Link& link(LinkId id) const { return links_.at(id); }
  [[nodiscard]] const std::vector<Link>& links() const noexcept { return links_; }
  [[nodiscard]] const std::map<NodeId, Role>& nodes() const noexcept { return nodes_; }
  [[nodiscard]] const std::map<std::uint32_t, Route>& routes() const noexcept { return routes_; }

  [[nodiscard]] std::vector<NodeId> with_role(Role r) const {
    std::vector<NodeId> out;
    for (const auto& [id, role] : nodes_)
      if (role == r) out.push_back(id);
    return out;
  }

  [[nodiscard]] NodeId source() const {
    auto s = with_role(Role::Source);
    if (s.size() != 1) throw Error(ErrorCode::ConfigError, "topology needs exactly one source");
    return s.front();
  }

  /// Ordinals of the streams routed to `dest`.
  [[nodiscard]] std::vector<std::uint32_t> incoming(NodeId dest) const {
    std::vector<std::uint32_t> out;
    for (const auto& [ordinal, route] : routes_) {
      for (LinkId l : route.links) {
        if (links_[l].to == dest) {
          out.push_back(ordinal);
          break;
        }
      }
    }
    return out;
  }

  /// Idle bidirectional mesh link; carries no route.
  void add_mesh_link(NodeId a, NodeId b) {
    add_link(a, b);
    add_link(b, a);
  }

 private:
  std::map<NodeId, Role> nodes_;
  std::vector<Link> links_;
  std::map<std::uint32_t, Route> routes_;
};

inline constexpr NodeId kKeyServerNode = 0;

/// Two raw streams to nodes 5 and 6 through relays 2, 3, 4 and 7.
inline Topology build_fig3() {
  Topology t;
  t.add_node(kKeyServerNode, Role::KeyServer);
  t.add_node(1, Role::Source);
  for (NodeId r : {2, 3, 4, 7}) t.add_node(r, Role::Relay);
  for (NodeId d : {5, 6}) t.add_node(d, Role::Destination);
  t.add_route(StreamKind::Raw, 1, {{1, 2, 5}});
  t.add_route(StreamKind::Raw, 2, {{1, 3, 6}});
  t.add_route(StreamKind::Coded, 1, {{1, 4, 5}, {1, 4, 6}});
  t.add_route(StreamKind::Coded, 2, {{1, 7, 5}, {1, 7, 6}});
  t.add_mesh_link(2, 4);
  t.add_mesh_link(4, 7);
  t.add_mesh_link(7, 3);
  return t;
}

/// Three raw streams from F-AP1 to F-APs 6, 7 and 8 through relays 2, 3, 4, 5 and 9.
inline Topology build_fig4() {
  Topology t;
  t.add_node(kKeyServerNode, Role::KeyServer);
  t.add_node(1, Role::Source);
  for (NodeId r : {2, 3, 4, 5, 9}) t.add_node(r, Role::Relay);
  for (NodeId d : {6, 7, 8}) t.add_node(d, Role::Destination);
  t.add_route(StreamKind::Raw, 1, {{1, 2, 6}});
  t.add_route(StreamKind::Raw, 3, {{1, 3, 8}});
  t.add_route(StreamKind::Coded, 1, {{1, 4, 6}, {1, 4, 7}, {1, 4, 8}});
  t.add_route(StreamKind::Coded, 2, {{1, 5, 6}, {1, 5, 7}, {1, 5, 8}});
  t.add_route(StreamKind::Coded, 3, {{1, 9, 6}, {1, 9, 7}, {1, 9, 8}});
  t.add_mesh_link(2, 4);
  t.add_mesh_link(4, 5);
  t.add_mesh_link(5, 9);
  t.add_mesh_link(9, 3);
  return t;
}

/// One relay per transmitted stream. x_1 goes to the first destination,
/// x_N to the last, and every coded stream to all destinations.
inline Topology build_general(std::size_t d_raw, std::size_t l_f, std::size_t n_dest) {
  if (d_raw < 2 || l_f < 1 || n_dest < 2) throw Error(ErrorCode::DomainError, "build_general preconditions");
  const std::size_t n_streams = d_raw + l_f + 1;
  Topology t;
  t.add_node(kKeyServerNode, Role::KeyServer);
  t.add_node(1, Role::Source);
  auto relay = [](std::size_t s) { return static_cast<NodeId>(2 + s); };
  auto dest = [&](std::size_t k) { return static_cast<NodeId>(2 + n_streams + k); };
  for (std::size_t s = 0; s < n_streams; ++s) t.add_node(relay(s), Role::Relay);
  for (std::size_t k = 0; k < n_dest; ++k) t.add_node(dest(k), Role::Destination);

  t.add_route(StreamKind::Raw, 1, {{1, relay(0), dest(0)}});
  t.add_route(StreamKind::Raw, d_raw, {{1, relay(1), dest(n_dest - 1)}});
  for (std::size_t i = 1; i <= d_raw - 1 + l_f; ++i) {
    std::vector<std::vector<NodeId>> paths;
    for (std::size_t k = 0; k < n_dest; ++k) paths.push_back({1, relay(1 + i), dest(k)});
    t.add_route(StreamKind::Coded, i, paths);
  }
  return t;
}

}  // namespace edcnc
