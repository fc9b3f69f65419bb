#pragma once

// Domain types shared by every layer of the collaborative decision stack.

#include <array>
#include <chrono>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace collab {

using Duration = std::chrono::microseconds;

struct NodeId {
  std::uint32_t value{};
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

struct SessionId {
  std::uint64_t value{};
  SessionId next() const { return SessionId{value + 1}; }
  friend auto operator<=>(const SessionId&, const SessionId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, SessionId id) { return os << id.value; }

// Microseconds since run start.
struct SimTime {
  std::int64_t us{};
  friend auto operator<=>(const SimTime&, const SimTime&) = default;
  friend SimTime operator+(SimTime t, Duration d) { return SimTime{t.us + d.count()}; }
  friend Duration operator-(SimTime a, SimTime b) { return Duration{a.us - b.us}; }
};

inline std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.us << "us"; }

// Declaration order is the symbolic quality tier, best first.
enum class SensorKind { Lidar, OpticalCamera, RgbCamera };

inline int sensor_tier(SensorKind kind) {
  switch (kind) {
    case SensorKind::Lidar: return 3;
    case SensorKind::OpticalCamera: return 2;
    case SensorKind::RgbCamera: return 1;
  }
  return 0;
}

inline std::string_view to_string(SensorKind kind) {
  switch (kind) {
    case SensorKind::Lidar: return "lidar";
    case SensorKind::OpticalCamera: return "optical_camera";
    case SensorKind::RgbCamera: return "rgb_camera";
  }
  return "?";
}

inline std::optional<SensorKind> parse_sensor_kind(std::string_view s) {
  for (auto k : {SensorKind::Lidar, SensorKind::OpticalCamera, SensorKind::RgbCamera})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

struct SensorProfile {
  SensorKind kind{SensorKind::RgbCamera};
  double base_false_negative{};
  double base_false_positive{};
  double effective_range{1.0};  // meters
  friend bool operator==(const SensorProfile&, const SensorProfile&) = default;
};

struct Pose {
  double x{};
  double y{};
  friend bool operator==(const Pose&, const Pose&) = default;
};

inline double distance(Pose a, Pose b) { return std::hypot(a.x - b.x, a.y - b.y); }

// There is no "unknown": a node that has nothing to say does not claim.
enum class Detection { PedestrianDetected, Clear };

inline std::string_view to_string(Detection d) {
  return d == Detection::Clear ? "clear" : "pedestrian_detected";
}

inline std::optional<Detection> parse_detection(std::string_view s) {
  if (s == "clear") return Detection::Clear;
  if (s == "pedestrian_detected") return Detection::PedestrianDetected;
  return std::nullopt;
}

// One node's verdict for one session. The profile is a snapshot taken at
// emission, so a claim carries its own evidence.
struct Claim {
  NodeId node;
  SessionId session;
  Detection detection{Detection::Clear};
  SensorProfile profile;
  double distance_to_target{};  // meters to the query region center
  SimTime emitted_at;
  friend bool operator==(const Claim&, const Claim&) = default;
};

enum class Verdict { Go, Stop };

inline std::string_view to_string(Verdict v) { return v == Verdict::Go ? "go" : "stop"; }

// Listed in precedence order: the first applicable reason is recorded.
enum class ExclusionReason { UnknownNode, MalformedEvidence, Duplicate, Late };

inline constexpr std::array kExclusionReasons{ExclusionReason::UnknownNode,
                                              ExclusionReason::MalformedEvidence,
                                              ExclusionReason::Duplicate, ExclusionReason::Late};

inline std::string_view to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::UnknownNode: return "unknown_node";
    case ExclusionReason::MalformedEvidence: return "malformed_evidence";
    case ExclusionReason::Duplicate: return "duplicate";
    case ExclusionReason::Late: return "late";
  }
  return "?";
}

struct Exclusion {
  Claim claim;
  ExclusionReason reason{ExclusionReason::Late};
  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

enum class AggregationSemantics { UnanimitySafe, Majority, TrustWeightedMajority, ExpertOverride };

inline constexpr std::array kAllSemantics{
    AggregationSemantics::UnanimitySafe, AggregationSemantics::Majority,
    AggregationSemantics::TrustWeightedMajority, AggregationSemantics::ExpertOverride};

inline std::string_view to_string(AggregationSemantics s) {
  switch (s) {
    case AggregationSemantics::UnanimitySafe: return "unanimity-safe";
    case AggregationSemantics::Majority: return "majority";
    case AggregationSemantics::TrustWeightedMajority: return "trust-weighted-majority";
    case AggregationSemantics::ExpertOverride: return "expert-override";
  }
  return "?";
}

inline std::optional<AggregationSemantics> parse_semantics(std::string_view s) {
  for (auto sem : kAllSemantics)
    if (to_string(sem) == s) return sem;
  return std::nullopt;
}

struct Decision {
  SessionId session;
  Verdict verdict{Verdict::Stop};
  AggregationSemantics semantics{AggregationSemantics::ExpertOverride};
  std::vector<NodeId> ranking;  // most trustworthy first
  std::vector<Claim> used_claims;
  std::vector<Exclusion> excluded_claims;
  SimTime decided_at;
  friend bool operator==(const Decision&, const Decision&) = default;
};

// Empty iff the profile satisfies its invariants. Each message is prefixed
// with `path` so callers can point at the offending field.
inline std::vector<std::string> profile_errors(const SensorProfile& p, const std::string& path) {
  std::vector<std::string> errors;
  auto check_rate = [&](double v, std::string_view field) {
    if (!(std::isfinite(v) && v >= 0.0 && v < 0.5))
      errors.push_back(path + "." + std::string(field) + ": " + std::to_string(v) +
                       " must be in [0, 0.5)");
  };
  check_rate(p.base_false_negative, "base_false_negative");
  check_rate(p.base_false_positive, "base_false_positive");
  if (!(std::isfinite(p.effective_range) && p.effective_range > 0.0))
    errors.push_back(path + ".effective_range: " + std::to_string(p.effective_range) +
                     " must be > 0");
  return errors;
}

inline bool evidence_valid(const Claim& c) {
  return profile_errors(c.profile, "claim").empty() && std::isfinite(c.distance_to_target) &&
         c.distance_to_target >= 0.0;
}

}  // namespace collab
