#pragma once

// The run trace: a totally ordered record of everything that happened, and
// its newline-delimited JSON form. Field order is fixed so traces can be
// diffed byte-for-byte.

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "collab/actuation.hpp"
#include "collab/errors.hpp"
#include "collab/netsim.hpp"
#include "collab/types.hpp"

namespace collab {

namespace trace {

struct SessionOpened {
  SimTime at;
  SessionId session;
  SimTime deadline;
};
struct Sent {
  Message msg;
};
struct Dropped {
  Message msg;
  NodeId recipient;
};
struct Delivered {
  SimTime at;
  Message msg;
  NodeId recipient;
};
struct ClaimAccepted {
  SimTime at;
  SessionId session;
  Claim claim;
};
// `session` is the session the claim was booked against; nullopt once every
// session has closed.
struct ClaimExcluded {
  SimTime at;
  std::optional<SessionId> session;
  Claim claim;
  ExclusionReason reason{};
};
struct Decided {
  Decision decision;
};
struct CommandApplied {
  SimTime at;
  NodeId node;
  ActuationCommand cmd;
  Motion motion{};
};
struct StaleCommand {
  SimTime at;
  NodeId node;
  ActuationCommand cmd;
  SessionId latest_session;
};
struct SessionClosed {
  SimTime at;
  SessionId session;
};

}  // namespace trace

using TraceRecord =
    std::variant<trace::SessionOpened, trace::Sent, trace::Dropped, trace::Delivered,
                 trace::ClaimAccepted, trace::ClaimExcluded, trace::Decided,
                 trace::CommandApplied, trace::StaleCommand, trace::SessionClosed>;

using Trace = std::vector<TraceRecord>;

using ojson = nlohmann::ordered_json;

inline ojson to_json(const SensorProfile& p) {
  return ojson{{"kind", to_string(p.kind)},
               {"base_false_negative", p.base_false_negative},
               {"base_false_positive", p.base_false_positive},
               {"effective_range", p.effective_range}};
}

inline ojson to_json(const Claim& c) {
  return ojson{{"node", c.node.value},
               {"session", c.session.value},
               {"detection", to_string(c.detection)},
               {"profile", to_json(c.profile)},
               {"distance_to_target", c.distance_to_target},
               {"emitted_at_us", c.emitted_at.us}};
}

inline Claim claim_from_json(const nlohmann::json& j) {
  try {
    Claim c;
    c.node = NodeId{j.at("node").get<std::uint32_t>()};
    c.session = SessionId{j.at("session").get<std::uint64_t>()};
    auto det = parse_detection(j.at("detection").get<std::string>());
    const auto& p = j.at("profile");
    auto kind = parse_sensor_kind(p.at("kind").get<std::string>());
    if (!det || !kind) throw ParseError("claim: bad enumeration value");
    c.detection = *det;
    c.profile = {*kind, p.at("base_false_negative").get<double>(),
                 p.at("base_false_positive").get<double>(), p.at("effective_range").get<double>()};
    c.distance_to_target = j.at("distance_to_target").get<double>();
    c.emitted_at = SimTime{j.at("emitted_at_us").get<std::int64_t>()};
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("claim: ") + e.what());
  }
}

inline ojson to_json(const ActuationCommand& cmd) {
  return ojson{{"session", cmd.session.value},
               {"target", cmd.target.value},
               {"action", to_string(cmd.action)},
               {"issue_order", cmd.issue_order}};
}

inline ojson to_json(const Message& m) {
  ojson j{{"kind", to_string(m.kind())}, {"src", m.src.value}};
  if (m.dst)
    j["dst"] = m.dst->value;
  else
    j["dst"] = "broadcast";
  j["sent_at_us"] = m.sent_at.us;
  j["seq"] = m.seq;
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SessionStart>)
          j["payload"] = ojson{{"session", p.id.value}, {"deadline_us", p.deadline.us}};
        else
          j["payload"] = to_json(p);
      },
      m.payload);
  return j;
}

inline ojson to_json(const Decision& d) {
  ojson ranking = ojson::array();
  for (auto n : d.ranking) ranking.push_back(n.value);
  ojson used = ojson::array();
  for (const auto& c : d.used_claims) used.push_back(to_json(c));
  ojson excluded = ojson::array();
  for (const auto& e : d.excluded_claims)
    excluded.push_back(ojson{{"reason", to_string(e.reason)}, {"claim", to_json(e.claim)}});
  return ojson{{"session", d.session.value},  {"verdict", to_string(d.verdict)},
               {"semantics", to_string(d.semantics)}, {"ranking", ranking},
               {"used_claims", used},          {"excluded_claims", excluded}};
}

inline SimTime record_time(const TraceRecord& r) {
  return std::visit(
      [](const auto& rec) -> SimTime {
        using R = std::decay_t<decltype(rec)>;
        if constexpr (std::is_same_v<R, trace::Sent> || std::is_same_v<R, trace::Dropped>)
          return rec.msg.sent_at;
        else if constexpr (std::is_same_v<R, trace::Decided>)
          return rec.decision.decided_at;
        else
          return rec.at;
      },
      r);
}

inline ojson to_json(const TraceRecord& r) {
  ojson j{{"t_us", record_time(r).us}};
  std::visit(
      [&](const auto& rec) {
        using R = std::decay_t<decltype(rec)>;
        if constexpr (std::is_same_v<R, trace::SessionOpened>) {
          j["event"] = "session_opened";
          j["session"] = rec.session.value;
          j["deadline_us"] = rec.deadline.us;
        } else if constexpr (std::is_same_v<R, trace::Sent>) {
          j["event"] = "sent";
          j["msg"] = to_json(rec.msg);
        } else if constexpr (std::is_same_v<R, trace::Dropped>) {
          j["event"] = "dropped";
          j["recipient"] = rec.recipient.value;
          j["msg"] = to_json(rec.msg);
        } else if constexpr (std::is_same_v<R, trace::Delivered>) {
          j["event"] = "delivered";
          j["recipient"] = rec.recipient.value;
          j["msg"] = to_json(rec.msg);
        } else if constexpr (std::is_same_v<R, trace::ClaimAccepted>) {
          j["event"] = "claim_accepted";
          j["session"] = rec.session.value;
          j["claim"] = to_json(rec.claim);
        } else if constexpr (std::is_same_v<R, trace::ClaimExcluded>) {
          j["event"] = "claim_excluded";
          if (rec.session)
            j["session"] = rec.session->value;
          else
            j["session"] = nullptr;
          j["reason"] = to_string(rec.reason);
          j["claim"] = to_json(rec.claim);
        } else if constexpr (std::is_same_v<R, trace::Decided>) {
          j["event"] = "decision";
          j["decision"] = to_json(rec.decision);
        } else if constexpr (std::is_same_v<R, trace::CommandApplied>) {
          j["event"] = "command_applied";
          j["node"] = rec.node.value;
          j["cmd"] = to_json(rec.cmd);
          j["motion"] = to_string(rec.motion);
        } else if constexpr (std::is_same_v<R, trace::StaleCommand>) {
          j["event"] = "stale_command";
          j["node"] = rec.node.value;
          j["cmd"] = to_json(rec.cmd);
          j["latest_session"] = rec.latest_session.value;
        } else if constexpr (std::is_same_v<R, trace::SessionClosed>) {
          j["event"] = "session_closed";
          j["session"] = rec.session.value;
        }
      },
      r);
  return j;
}

inline void write_trace(std::ostream& os, const Trace& t) {
  for (const auto& r : t) os << to_json(r).dump() << '\n';
}

inline std::string serialize(const Trace& t) {
  std::ostringstream os;
  write_trace(os, t);
  return os.str();
}

}  // namespace collab
