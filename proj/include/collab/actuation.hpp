#pragma once

#include <algorithm>
#include <set>
#include <string_view>
#include <vector>

#include "collab/errors.hpp"
#include "collab/types.hpp"

namespace collab {

enum class Action { Proceed, Halt };

inline std::string_view to_string(Action a) { return a == Action::Halt ? "halt" : "proceed"; }

struct ActuationCommand {
  SessionId session;
  NodeId target;
  Action action{Action::Halt};
  std::uint32_t issue_order{};
  friend bool operator==(const ActuationCommand&, const ActuationCommand&) = default;
};

// One command per actuated node, lowest id first.
inline std::vector<ActuationCommand> sequence_actuation(const Decision& decision,
                                                        const std::set<NodeId>& actuated_nodes) {
  if (actuated_nodes.empty()) throw ProtocolError("sequence_actuation: no actuated nodes");
  const Action action = decision.verdict == Verdict::Stop ? Action::Halt : Action::Proceed;
  std::vector<ActuationCommand> commands;
  commands.reserve(actuated_nodes.size());
  std::uint32_t order = 0;
  for (NodeId target : actuated_nodes)  // std::set iterates ascending
    commands.push_back({decision.session, target, action, order++});
  return commands;
}

enum class Motion { Moving, Halted };

inline std::string_view to_string(Motion m) { return m == Motion::Halted ? "halted" : "moving"; }

// A node starts halted at the curb, before any session.
struct MotionState {
  Motion motion{Motion::Halted};
  SessionId latest_session{0};
  friend bool operator==(const MotionState&, const MotionState&) = default;
};

struct ApplyResult {
  MotionState state;
  bool stale{};
};

inline ApplyResult apply_command(MotionState node, const ActuationCommand& cmd) {
  if (cmd.session < node.latest_session) return {node, true};
  node.latest_session = cmd.session;
  node.motion = cmd.action == Action::Halt ? Motion::Halted : Motion::Moving;
  return {node, false};
}

}  // namespace collab
