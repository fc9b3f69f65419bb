#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "collab/types.hpp"

namespace collab {

// Counterfactual score of one node: its own claim taken as the verdict
// (pedestrian_detected -> Stop, clear -> Go).
struct SoloStats {
  std::uint64_t claims{};
  std::uint64_t errors{};

  std::optional<double> error_rate() const {
    if (claims == 0) return std::nullopt;
    return static_cast<double>(errors) / static_cast<double>(claims);
  }
  friend bool operator==(const SoloStats&, const SoloStats&) = default;
};

struct RunMetrics {
  AggregationSemantics semantics{AggregationSemantics::ExpertOverride};
  std::uint64_t decisions{};
  std::uint64_t stops{};
  std::uint64_t gos{};
  std::uint64_t false_go{};    // Go while a pedestrian is present
  std::uint64_t false_stop{};  // Stop while the crossing is clear
  std::map<NodeId, SoloStats> solo;
  std::map<ExclusionReason, std::uint64_t> exclusions{
      {ExclusionReason::UnknownNode, 0},
      {ExclusionReason::MalformedEvidence, 0},
      {ExclusionReason::Duplicate, 0},
      {ExclusionReason::Late, 0}};

  std::uint64_t correct() const { return decisions - false_go - false_stop; }

  double error_rate() const {
    return decisions == 0 ? 0.0 : static_cast<double>(false_go + false_stop) / decisions;
  }
  double stop_rate() const { return decisions == 0 ? 0.0 : static_cast<double>(stops) / decisions; }

  void record_decision(Verdict v, bool pedestrian_present) {
    ++decisions;
    if (v == Verdict::Stop) {
      ++stops;
      if (!pedestrian_present) ++false_stop;
    } else {
      ++gos;
      if (pedestrian_present) ++false_go;
    }
  }

  void record_claim(NodeId node, Detection d, bool pedestrian_present) {
    auto& s = solo[node];
    ++s.claims;
    if ((d == Detection::PedestrianDetected) != pedestrian_present) ++s.errors;
  }

  void merge(const RunMetrics& other) {
    decisions += other.decisions;
    stops += other.stops;
    gos += other.gos;
    false_go += other.false_go;
    false_stop += other.false_stop;
    for (const auto& [node, s] : other.solo) {
      solo[node].claims += s.claims;
      solo[node].errors += s.errors;
    }
    for (const auto& [reason, n] : other.exclusions) exclusions[reason] += n;
  }

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

inline nlohmann::ordered_json to_json(const RunMetrics& m) {
  using oj = nlohmann::ordered_json;
  oj solo = oj::array();
  for (const auto& [node, s] : m.solo) {
    oj entry{{"node", node.value}, {"claims", s.claims}, {"errors", s.errors}};
    if (auto r = s.error_rate())
      entry["error_rate"] = *r;
    else
      entry["error_rate"] = nullptr;
    solo.push_back(entry);
  }
  oj excl = oj::object();
  for (const auto& [reason, n] : m.exclusions) excl[std::string(to_string(reason))] = n;
  return oj{{"semantics", to_string(m.semantics)},
            {"decisions", m.decisions},
            {"stops", m.stops},
            {"gos", m.gos},
            {"false_go", m.false_go},
            {"false_stop", m.false_stop},
            {"error_rate", m.error_rate()},
            {"solo", solo},
            {"exclusions", excl}};
}

}  // namespace collab
