#pragma once

// Synthetic perception: a node's binary detection given the ground truth and
// its sensor quality, with error rates that grow linearly with distance.

#include <algorithm>

#include "collab/rng.hpp"
#include "collab/types.hpp"

namespace collab {

struct GroundTruth {
  bool pedestrian_present{};
  Pose pedestrian_pose;  // ignored when no pedestrian is present
};

struct PerceptionModel {
  double distance_reference{10.0};  // meters; the distance at which base rates double
};

struct ErrorRates {
  double false_negative{};
  double false_positive{};
};

inline constexpr double kBlindRate = 0.5;

inline ErrorRates effective_error_rates(const SensorProfile& profile, double distance,
                                        const PerceptionModel& model) {
  if (distance > profile.effective_range) return {kBlindRate, kBlindRate};
  const double degradation = 1.0 + distance / model.distance_reference;
  return {std::min(kBlindRate, profile.base_false_negative * degradation),
          std::min(kBlindRate, profile.base_false_positive * degradation)};
}

// Distance the node perceives over: to the pedestrian when there is one,
// otherwise to the center of the region being queried.
inline double sensing_distance(const GroundTruth& truth, Pose node_pose, Pose query_center) {
  return distance(node_pose, truth.pedestrian_present ? truth.pedestrian_pose : query_center);
}

// Consumes exactly one draw from `rng`.
inline Detection sense(const GroundTruth& truth, Pose node_pose, Pose query_center,
                       const SensorProfile& profile, const PerceptionModel& model,
                       RandomStream& rng) {
  const auto rates =
      effective_error_rates(profile, sensing_distance(truth, node_pose, query_center), model);
  const double u = rng.uniform01();
  if (truth.pedestrian_present)
    return u < rates.false_negative ? Detection::Clear : Detection::PedestrianDetected;
  return u < rates.false_positive ? Detection::PedestrianDetected : Detection::Clear;
}

}  // namespace collab
