#pragma once

// In-process stand-in for a group key server. Only membership-based
// authorization is modeled; there is no wire protocol.

#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "edcnc/cipher.hpp"
#include "edcnc/error.hpp"

namespace edcnc {

using NodeId = std::uint32_t;
using GroupId = std::uint32_t;

struct Group {
  NodeId source = 0;
  std::set<NodeId> destinations;
  SessionKey key;

  [[nodiscard]] bool is_member(NodeId node) const { return node == source || destinations.contains(node); }
};

struct KeyRequestRecord {
  NodeId node;
  GroupId group;
  bool granted;
};

class GroupRegistry {
 public:
  explicit GroupRegistry(std::uint64_t seed = 0x5EC0DE) : rng_(seed) {}

  GroupId create_group(NodeId source, const std::set<NodeId>& destinations) {
    if (destinations.contains(source))
      throw Error(ErrorCode::InvalidArgument, "source cannot also be a destination");
    std::lock_guard lock(mu_);
    SessionKey key;
    do {
      key.value = rng_();
    } while (key.value == 0 || issued_.contains(key.value));
    issued_.insert(key.value);
    const GroupId id = next_id_++;
    groups_.emplace(id, Group{source, destinations, key});
    return id;
  }

  SessionKey request_key(NodeId node, GroupId group) {
    std::lock_guard lock(mu_);
    auto it = groups_.find(group);
    if (it == groups_.end()) throw Error(ErrorCode::UnknownGroup, "group " + std::to_string(group));
    const bool granted = it->second.is_member(node);
    audit_.push_back({node, group, granted});
    if (!granted) {
      throw Error(ErrorCode::Unauthorized,
                  "node " + std::to_string(node) + " is not a member of group " + std::to_string(group));
    }
    return it->second.key;
  }

  [[nodiscard]] std::vector<KeyRequestRecord> audit_log() const {
    std::lock_guard lock(mu_);
    return audit_;
  }

 private:
  mutable std::mutex mu_;
  std::mt19937_64 rng_;
  GroupId next_id_ = 1;
  std::map<GroupId, Group> groups_;
  std::set<std::uint64_t> issued_;
  std::vector<KeyRequestRecord> audit_;
};

}  // namespace edcnc
