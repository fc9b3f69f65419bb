#pragma once

// Scenario files are JSON documents with // and /* */ comments allowed.
// scenarios/reference.scenario documents every field.

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "collab/errors.hpp"
#include "collab/scenario.hpp"

namespace collab {

namespace detail {

using json = nlohmann::json;

inline const json& field(const json& obj, std::string_view key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + std::string(key) + ": missing field");
  return *it;
}

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                           const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw ParseError(path + "." + key + ": unknown field");
  }
}

template <class T>
T get(const json& obj, std::string_view key, const std::string& path) {
  const auto& v = field(obj, key, path);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError(path + "." + std::string(key) + ": wrong type");
  }
}

inline Pose read_pose(const json& j, const std::string& path) {
  reject_unknown(j, {"x", "y"}, path);
  return {get<double>(j, "x", path), get<double>(j, "y", path)};
}

inline SensorProfile read_sensor(const json& j, const std::string& path) {
  reject_unknown(j, {"kind", "base_false_negative", "base_false_positive", "effective_range"},
                 path);
  auto kind_name = get<std::string>(j, "kind", path);
  auto kind = parse_sensor_kind(kind_name);
  if (!kind) throw ParseError(path + ".kind: unknown sensor kind '" + kind_name + "'");
  return {*kind, get<double>(j, "base_false_negative", path),
          get<double>(j, "base_false_positive", path), get<double>(j, "effective_range", path)};
}

}  // namespace detail

// Structural parse only; invariants are checked by validate_scenario.
inline Scenario parse_scenario(std::string_view text) {
  using detail::get;
  detail::json doc;
  try {
    doc = detail::json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const detail::json::parse_error& e) {
    throw ParseError(std::string("malformed scenario: ") + e.what());
  }
  const std::string root = "scenario";
  detail::reject_unknown(doc,
                         {"nodes", "ground_truth", "query_region_center", "perception", "network",
                          "session_window_us", "settle_interval_us", "sessions"},
                         root);

  Scenario s;
  const auto& nodes = detail::field(doc, "nodes", root);
  if (!nodes.is_array()) throw ParseError("nodes: expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    const std::string path = "nodes[" + std::to_string(i) + "]";
    detail::reject_unknown(n, {"id", "name", "pose", "sensor", "is_master", "is_actuated"}, path);
    NodeSpec spec;
    spec.id = NodeId{get<std::uint32_t>(n, "id", path)};
    spec.name = n.contains("name") ? get<std::string>(n, "name", path)
                                   : "node" + std::to_string(spec.id.value);
    spec.pose = detail::read_pose(detail::field(n, "pose", path), path + ".pose");
    spec.sensor = detail::read_sensor(detail::field(n, "sensor", path), path + ".sensor");
    spec.is_master = n.contains("is_master") && get<bool>(n, "is_master", path);
    spec.is_actuated = n.contains("is_actuated") && get<bool>(n, "is_actuated", path);
    s.nodes.push_back(std::move(spec));
  }

  const auto& gt = detail::field(doc, "ground_truth", root);
  detail::reject_unknown(gt, {"pedestrian_present", "pedestrian_pose"}, "ground_truth");
  s.ground_truth.pedestrian_present = get<bool>(gt, "pedestrian_present", "ground_truth");
  if (gt.contains("pedestrian_pose"))
    s.ground_truth.pedestrian_pose =
        detail::read_pose(gt["pedestrian_pose"], "ground_truth.pedestrian_pose");

  s.query_region_center =
      detail::read_pose(detail::field(doc, "query_region_center", root), "query_region_center");

  const auto& perception = detail::field(doc, "perception", root);
  detail::reject_unknown(perception, {"distance_reference"}, "perception");
  s.perception.distance_reference = get<double>(perception, "distance_reference", "perception");

  const auto& net = detail::field(doc, "network", root);
  detail::reject_unknown(net, {"latency_min_us", "latency_max_us", "drop_probability", "seed"},
                         "network");
  s.network.latency_min = Duration{get<std::int64_t>(net, "latency_min_us", "network")};
  s.network.latency_max = Duration{get<std::int64_t>(net, "latency_max_us", "network")};
  s.network.drop_probability = get<double>(net, "drop_probability", "network");
  s.network.seed = net.contains("seed") ? get<std::uint64_t>(net, "seed", "network") : 0;

  s.session_window = Duration{get<std::int64_t>(doc, "session_window_us", root)};
  s.settle_interval = Duration{get<std::int64_t>(doc, "settle_interval_us", root)};
  s.sessions = get<std::uint64_t>(doc, "sessions", root);
  return s;
}

// Parses and validates. Throws ParseError or ValidationError.
inline Scenario load_scenario_text(std::string_view text) {
  Scenario s = parse_scenario(text);
  if (auto errors = validate_scenario(s); !errors.empty()) throw ValidationError(std::move(errors));
  return s;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str());
}

}  // namespace collab
