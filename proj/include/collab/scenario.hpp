#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "collab/netsim.hpp"
#include "collab/perception.hpp"
#include "collab/types.hpp"

namespace collab {

struct NodeSpec {
  NodeId id;
  std::string name;
  Pose pose;
  SensorProfile sensor;
  bool is_master{};
  bool is_actuated{};
};

struct Scenario {
  std::vector<NodeSpec> nodes;
  GroundTruth ground_truth;
  Pose query_region_center;
  PerceptionModel perception;
  NetworkConfig network;
  Duration session_window{Duration{50'000}};
  Duration settle_interval{Duration{20'000}};
  std::uint64_t sessions{1};

  const NodeSpec& master() const {
    for (const auto& n : nodes)
      if (n.is_master) return n;
    throw ProtocolError("scenario has no master");
  }

  const NodeSpec& node(NodeId id) const {
    for (const auto& n : nodes)
      if (n.id == id) return n;
    throw ProtocolError("unknown node " + std::to_string(id.value));
  }

  // Ascending ids.
  std::vector<NodeId> node_ids() const {
    std::set<NodeId> ids;
    for (const auto& n : nodes) ids.insert(n.id);
    return {ids.begin(), ids.end()};
  }

  std::set<NodeId> actuated_nodes() const {
    std::set<NodeId> ids;
    for (const auto& n : nodes)
      if (n.is_actuated) ids.insert(n.id);
    return ids;
  }
};

// One message per violated invariant, each naming the offending field.
inline std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> errors;
  auto add = [&](std::vector<std::string> more) {
    errors.insert(errors.end(), more.begin(), more.end());
  };
  auto check_pose = [&](const Pose& p, const std::string& path) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      errors.push_back(path + ": coordinates must be finite");
  };

  if (s.nodes.empty()) errors.push_back("nodes: at least one node required");

  std::map<NodeId, int> seen;
  int masters = 0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    const std::string path = "nodes[" + std::to_string(i) + "]";
    if (seen[n.id]++ == 1) errors.push_back("duplicate node id: " + std::to_string(n.id.value));
    check_pose(n.pose, path + ".pose");
    add(profile_errors(n.sensor, path + ".sensor"));
    if (n.is_master) {
      ++masters;
      if (!n.is_actuated) errors.push_back(path + ".is_actuated: the master must be actuated");
    }
  }
  if (!s.nodes.empty() && masters != 1) errors.push_back("exactly one master required");

  check_pose(s.ground_truth.pedestrian_pose, "ground_truth.pedestrian_pose");
  check_pose(s.query_region_center, "query_region_center");
  if (!(std::isfinite(s.perception.distance_reference) && s.perception.distance_reference > 0))
    errors.push_back("perception.distance_reference: must be > 0");
  add(network_errors(s.network));
  if (s.session_window.count() <= 0) errors.push_back("session_window_us: must be > 0");
  if (s.settle_interval < s.network.latency_max)
    errors.push_back("settle_interval_us: must be >= network.latency_max_us");
  if (s.sessions < 1) errors.push_back("sessions: must be >= 1");
  return errors;
}

}  // namespace collab
