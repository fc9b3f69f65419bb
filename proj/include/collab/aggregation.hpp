#pragma once

// Verdict rules over a ranked, non-empty claim set. Every rule breaks ties
// towards Stop. The empty claim set never reaches these rules: the session
// layer turns it into a fail-safe Stop.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "collab/errors.hpp"
#include "collab/types.hpp"

namespace collab {

// Weight of ranking position i among n voters under TrustWeightedMajority:
// n - i, so the expert counts most but can still be outvoted.
inline std::int64_t position_weight(std::size_t position, std::size_t n) {
  return static_cast<std::int64_t>(n - position);
}

namespace detail {

inline const Claim& claim_of(std::span<const Claim> claims, NodeId node) {
  auto it = std::find_if(claims.begin(), claims.end(),
                         [&](const Claim& c) { return c.node == node; });
  if (it == claims.end())
    throw ProtocolError("decide: ranked node " + std::to_string(node.value) + " has no claim");
  return *it;
}

inline void check_consistent(std::span<const Claim> claims, std::span<const NodeId> ranking) {
  if (claims.empty()) throw ProtocolError("decide: empty claim set");
  if (claims.size() != ranking.size())
    throw ProtocolError("decide: ranking has " + std::to_string(ranking.size()) +
                        " nodes but there are " + std::to_string(claims.size()) + " claims");
  std::vector<NodeId> a(ranking.begin(), ranking.end());
  std::vector<NodeId> b;
  b.reserve(claims.size());
  for (const auto& c : claims) b.push_back(c.node);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end())
    throw ProtocolError("decide: ranking and claims cover different node sets");
}

}  // namespace detail

inline Verdict decide(std::span<const Claim> claims, std::span<const NodeId> ranking,
                      AggregationSemantics semantics) {
  detail::check_consistent(claims, ranking);

  switch (semantics) {
    case AggregationSemantics::UnanimitySafe: {
      bool all_clear = std::all_of(claims.begin(), claims.end(), [](const Claim& c) {
        return c.detection == Detection::Clear;
      });
      return all_clear ? Verdict::Go : Verdict::Stop;
    }
    case AggregationSemantics::Majority: {
      auto clear = std::count_if(claims.begin(), claims.end(), [](const Claim& c) {
        return c.detection == Detection::Clear;
      });
      auto detected = static_cast<std::ptrdiff_t>(claims.size()) - clear;
      return clear > detected ? Verdict::Go : Verdict::Stop;
    }
    case AggregationSemantics::TrustWeightedMajority: {
      std::int64_t clear = 0, detected = 0;
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto w = position_weight(i, ranking.size());
        (detail::claim_of(claims, ranking[i]).detection == Detection::Clear ? clear : detected) += w;
      }
      return clear > detected ? Verdict::Go : Verdict::Stop;
    }
    case AggregationSemantics::ExpertOverride:
      return detail::claim_of(claims, ranking.front()).detection == Detection::Clear
                 ? Verdict::Go
                 : Verdict::Stop;
  }
  throw ProtocolError("decide: unknown semantics");
}

}  // namespace collab
