#pragma once

// Symbolic trust ranking. A claim's trustworthiness is judged from the
// evidence it carries: sensor tier first, then proximity to the target, then
// the sensor's base error rates, with the node id as the final tie-break.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "collab/errors.hpp"
#include "collab/types.hpp"

namespace collab {

// Higher key = more trustworthy. Fields compare lexicographically in
// declaration order.
struct TrustKey {
  int sensor_tier{};
  double neg_distance{};
  double neg_error_sum{};
  std::int64_t node_tiebreak{};

  friend auto operator<=>(const TrustKey&, const TrustKey&) = default;
};

inline TrustKey trust_key(const Claim& claim) {
  return TrustKey{
      sensor_tier(claim.profile.kind),
      -claim.distance_to_target,
      -(claim.profile.base_false_negative + claim.profile.base_false_positive),
      -static_cast<std::int64_t>(claim.node.value),
  };
}

// Most trustworthy first. Throws ProtocolError when a node appears twice,
// which the session layer is supposed to rule out.
inline std::vector<NodeId> rank(std::span<const Claim> claims) {
  std::vector<std::pair<TrustKey, NodeId>> keyed;
  keyed.reserve(claims.size());
  for (const auto& c : claims) keyed.emplace_back(trust_key(c), c.node);

  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.second < b.second;
  });
  auto dup = std::adjacent_find(keyed.begin(), keyed.end(),
                                [](const auto& a, const auto& b) { return a.second == b.second; });
  if (dup != keyed.end())
    throw ProtocolError("rank: duplicate claim from node " + std::to_string(dup->second.value));

  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<NodeId> ranking;
  ranking.reserve(keyed.size());
  for (const auto& [key, node] : keyed) ranking.push_back(node);
  return ranking;
}

}  // namespace collab
