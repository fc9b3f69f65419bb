#pragma once

// One run of the collaborative decision protocol over the simulated network.
//
// Per session k the master:
//   1. opens session k and broadcasts SessionStart{k, deadline} to every
//      node, itself included;
//   2. every node that receives it senses once and sends its claim back;
//   3. at the deadline the master ranks the accepted claims, decides, and
//      sends one actuation command per actuated node in ascending id order;
//   4. after the settle interval it closes k and opens k + 1.

#include <cstdint>
#include <map>
#include <set>
#include <variant>
#include <vector>

#include "collab/actuation.hpp"
#include "collab/metrics.hpp"
#include "collab/netsim.hpp"
#include "collab/perception.hpp"
#include "collab/rng.hpp"
#include "collab/scenario.hpp"
#include "collab/session.hpp"
#include "collab/trace.hpp"

namespace collab {

enum class TruthMode { Fixed, Alternating };

inline std::string_view to_string(TruthMode m) {
  return m == TruthMode::Fixed ? "fixed" : "alternating";
}

inline std::optional<TruthMode> parse_truth_mode(std::string_view s) {
  if (s == "fixed") return TruthMode::Fixed;
  if (s == "alternating") return TruthMode::Alternating;
  return std::nullopt;
}

// Alternating mode keeps the configured truth on odd sessions and flips
// pedestrian presence on even ones.
inline GroundTruth truth_for_session(const GroundTruth& base, TruthMode mode, SessionId session) {
  GroundTruth t = base;
  if (mode == TruthMode::Alternating && session.value % 2 == 0)
    t.pedestrian_present = !t.pedestrian_present;
  return t;
}

struct RunOptions {
  TruthMode truth{TruthMode::Fixed};
  bool record_trace{true};
};

struct SessionOutcome {
  Decision decision;
  bool pedestrian_present{};
};

struct RunResult {
  Trace trace;  // empty unless RunOptions::record_trace
  RunMetrics metrics;
  std::vector<SessionOutcome> outcomes;
  std::map<NodeId, MotionState> final_motion;
};

class Simulation {
 public:
  Simulation(const Scenario& scenario, AggregationSemantics semantics, std::uint64_t seed,
             RunOptions options = {})
      : scenario_(scenario),
        semantics_(semantics),
        options_(options),
        network_(scenario.network),
        subscribers_(scenario.node_ids()),
        actuated_(scenario.actuated_nodes()),
        master_(scenario.master().id),
        sessions_(Roster(subscribers_.begin(), subscribers_.end())) {
    network_.seed = seed;
    metrics_.semantics = semantics;
    for (NodeId n : subscribers_) {
      motion_[n] = MotionState{};
      next_seq_[n] = 1;
    }
  }

  RunResult run() {
    open_session(SimTime{0});
    run_events(queue_, [this](const EventOrder& order, const Event& ev) {
      std::visit([&](const auto& e) { handle(order.due, e); }, ev);
    });
    return RunResult{std::move(trace_), std::move(metrics_), std::move(outcomes_),
                     std::move(motion_)};
  }

 private:
  struct Delivery {
    Message msg;
    NodeId recipient;
  };
  struct Deadline {
    SessionId session;
  };
  struct Tick {
    SessionId session;
  };
  using Event = std::variant<Delivery, Deadline, Tick>;

  void record(TraceRecord r) {
    if (options_.record_trace) trace_.push_back(std::move(r));
  }

  GroundTruth truth(SessionId s) const {
    return truth_for_session(scenario_.ground_truth, options_.truth, s);
  }

  void send(SimTime now, NodeId src, std::optional<NodeId> dst, Payload payload) {
    Message msg{std::move(payload), src, dst, now, next_seq_[src]++};
    record(trace::Sent{msg});
    for (const auto& tx : collab::send(msg, network_, subscribers_)) {
      if (!tx.due) {
        record(trace::Dropped{msg, tx.recipient});
        continue;
      }
      queue_.push({*tx.due, EventClass::Delivery, msg.src, msg.seq, tx.recipient},
                  Delivery{msg, tx.recipient});
    }
  }

  void open_session(SimTime now) {
    const SessionStart start = sessions_.open(now, scenario_.session_window);
    record(trace::SessionOpened{now, start.id, start.deadline});
    send(now, master_, std::nullopt, start);
    queue_.push({start.deadline, EventClass::SessionDeadline, master_, start.id.value, master_},
                Deadline{start.id});
  }

  void handle(SimTime now, const Delivery& d) {
    record(trace::Delivered{now, d.msg, d.recipient});
    std::visit([&](const auto& p) { on_payload(now, d.recipient, p); }, d.msg.payload);
  }

  void on_payload(SimTime now, NodeId self, const SessionStart& start) {
    const auto& node = scenario_.node(self);
    const GroundTruth t = truth(start.id);
    auto rng = sense_stream(network_.seed, self.value, start.id.value);
    const Detection detection =
        sense(t, node.pose, scenario_.query_region_center, node.sensor, scenario_.perception, rng);
    metrics_.record_claim(self, detection, t.pedestrian_present);
    Claim claim{self,
                start.id,
                detection,
                node.sensor,
                distance(node.pose, scenario_.query_region_center),
                now};
    send(now, self, master_, claim);
  }

  void on_payload(SimTime now, NodeId self, const Claim& claim) {
    if (self != master_) return;  // claims are addressed to the master only
    const auto booking = sessions_.accept(claim, now);
    if (booking.exclusion) {
      ++metrics_.exclusions[*booking.exclusion];
      record(trace::ClaimExcluded{now, booking.session, claim, *booking.exclusion});
    } else {
      record(trace::ClaimAccepted{now, *booking.session, claim});
    }
  }

  void on_payload(SimTime now, NodeId self, const ActuationCommand& cmd) {
    const auto result = apply_command(motion_[self], cmd);
    if (result.stale) {
      record(trace::StaleCommand{now, self, cmd, motion_[self].latest_session});
      return;
    }
    motion_[self] = result.state;
    record(trace::CommandApplied{now, self, cmd, result.state.motion});
  }

  void handle(SimTime now, const Deadline& d) {
    Decision decision = sessions_.decide(now, semantics_);
    const bool present = truth(d.session).pedestrian_present;
    metrics_.record_decision(decision.verdict, present);
    record(trace::Decided{decision});
    for (const auto& cmd : sequence_actuation(decision, actuated_))
      send(now, master_, cmd.target, cmd);
    outcomes_.push_back({std::move(decision), present});
    queue_.push({now + scenario_.settle_interval, EventClass::ActuationTick, master_,
                 d.session.value, master_},
                Tick{d.session});
  }

  void handle(SimTime now, const Tick& t) {
    sessions_.close();
    record(trace::SessionClosed{now, t.session});
    if (t.session.value < scenario_.sessions) open_session(now);
  }

  const Scenario& scenario_;
  AggregationSemantics semantics_;
  RunOptions options_;
  NetworkConfig network_;
  std::vector<NodeId> subscribers_;
  std::set<NodeId> actuated_;
  NodeId master_;
  SessionController sessions_;

  EventQueue<Event> queue_;
  std::map<NodeId, std::uint64_t> next_seq_;
  std::map<NodeId, MotionState> motion_;
  Trace trace_;
  RunMetrics metrics_;
  std::vector<SessionOutcome> outcomes_;
};

}  // namespace collab
