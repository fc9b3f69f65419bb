#pragma once

// Shared test fixtures: hand-built claims, the Fig. 1 layout, a random
// scenario generator, and statistical helpers.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "collab/collab.hpp"

#ifndef COLLAB_SCENARIO_DIR
#define COLLAB_SCENARIO_DIR "scenarios"
#endif

namespace collab::testing {

inline std::string scenario_path(const std::string& name) {
  return std::string(COLLAB_SCENARIO_DIR) + "/" + name;
}

inline SensorProfile rgb(double fn = 0.18, double fp = 0.05) {
  return {SensorKind::RgbCamera, fn, fp, 30.0};
}
inline SensorProfile lidar(double fn = 0.01, double fp = 0.01) {
  return {SensorKind::Lidar, fn, fp, 50.0};
}

inline Claim make_claim(std::uint32_t node, Detection d, SensorProfile profile, double dist,
                        std::uint64_t session = 1) {
  return Claim{NodeId{node}, SessionId{session}, d, profile, dist, SimTime{0}};
}

// Robotdog (1) and TurtleBot 1 (2) far with RGB cameras saying clear,
// TurtleBot 2 (3) near with a lidar reporting the pedestrian.
inline std::vector<Claim> fig1_claims() {
  return {make_claim(1, Detection::Clear, rgb(), 15.0),
          make_claim(2, Detection::Clear, rgb(), 15.0),
          make_claim(3, Detection::PedestrianDetected, lidar(), 5.0)};
}

// 99.9% two-sided normal approximation to the binomial proportion interval.
inline std::pair<double, double> binomial_interval(double p, std::uint64_t n, double z = 3.2905) {
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p - half, p + half};
}

inline Scenario random_scenario(std::mt19937_64& rng, double max_drop = 0.5) {
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng); };
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<>(lo, hi)(rng); };

  Scenario s;
  const int n = pick(1, 6);
  std::set<std::uint32_t> ids;
  while (static_cast<int>(ids.size()) < n) ids.insert(static_cast<std::uint32_t>(pick(1, 40)));
  const int master = pick(0, n - 1);
  int i = 0;
  for (auto id : ids) {
    NodeSpec node;
    node.id = NodeId{id};
    node.name = "n" + std::to_string(id);
    node.pose = {uni(-20, 20), uni(-20, 20)};
    node.sensor = {static_cast<SensorKind>(pick(0, 2)), uni(0, 0.45), uni(0, 0.45), uni(5, 60)};
    node.is_master = i == master;
    node.is_actuated = node.is_master || pick(0, 1) == 1;
    s.nodes.push_back(node);
    ++i;
  }
  std::shuffle(s.nodes.begin(), s.nodes.end(), rng);
  s.ground_truth = {pick(0, 1) == 1, {uni(-5, 5), uni(-5, 5)}};
  s.query_region_center = {uni(-5, 5), uni(-5, 5)};
  s.perception.distance_reference = uni(2, 20);
  s.network.latency_min = Duration{pick(0, 10'000)};
  s.network.latency_max = s.network.latency_min + Duration{pick(0, 40'000)};
  s.network.drop_probability = uni(0, max_drop);
  s.network.seed = rng();
  s.session_window = Duration{pick(5'000, 60'000)};
  s.settle_interval = s.network.latency_max + Duration{pick(0, 10'000)};
  s.sessions = static_cast<std::uint64_t>(pick(1, 25));
  return s;
}

// Hand-built scenario: all nodes at the query point with identical rates.
inline Scenario colocated_scenario(int nodes, double fn, double fp, bool present,
                                   std::uint64_t sessions) {
  Scenario s;
  for (int i = 1; i <= nodes; ++i) {
    NodeSpec n;
    n.id = NodeId{static_cast<std::uint32_t>(i)};
    n.name = "n" + std::to_string(i);
    n.sensor = {SensorKind::RgbCamera, fn, fp, 30.0};
    n.is_master = i == 1;
    n.is_actuated = i == 1;
    s.nodes.push_back(n);
  }
  s.ground_truth = {present, {0, 0}};
  s.network = {Duration{1000}, Duration{5000}, 0.0, 1};
  s.session_window = Duration{50'000};
  s.settle_interval = Duration{10'000};
  s.sessions = sessions;
  return s;
}

}  // namespace collab::testing
