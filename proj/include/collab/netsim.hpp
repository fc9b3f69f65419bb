#pragma once

// Deterministic discrete-event transport: a pub-sub mesh abstracted to
// pairwise deliveries with uniform latency and independent loss.
//
// The event loop is single-threaded. Events pop in (due, class, src, seq, dst)
// order so equal-time events are always processed the same way; deliveries
// at time T precede a session deadline at T, which precedes an actuation tick
// at T.

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "collab/actuation.hpp"
#include "collab/errors.hpp"
#include "collab/rng.hpp"
#include "collab/session.hpp"
#include "collab/types.hpp"

namespace collab {

enum class MessageKind { SessionStart, ClaimMsg, ActuationCmd };

inline std::string_view to_string(MessageKind k) {
  switch (k) {
    case MessageKind::SessionStart: return "session_start";
    case MessageKind::ClaimMsg: return "claim";
    case MessageKind::ActuationCmd: return "actuation_cmd";
  }
  return "?";
}

using Payload = std::variant<SessionStart, Claim, ActuationCommand>;

struct Message {
  Payload payload;
  NodeId src;
  std::optional<NodeId> dst;  // nullopt = broadcast to every subscriber
  SimTime sent_at;
  std::uint64_t seq{};

  MessageKind kind() const { return static_cast<MessageKind>(payload.index()); }
  friend bool operator==(const Message&, const Message&) = default;
};

struct NetworkConfig {
  Duration latency_min{Duration{1000}};
  Duration latency_max{Duration{1000}};
  double drop_probability{};
  std::uint64_t seed{};
};

inline std::vector<std::string> network_errors(const NetworkConfig& c) {
  std::vector<std::string> errors;
  if (c.latency_min.count() < 0) errors.push_back("network.latency_min_us: must be >= 0");
  if (c.latency_max < c.latency_min)
    errors.push_back("network.latency_max_us: must be >= network.latency_min_us");
  if (!(c.drop_probability >= 0.0 && c.drop_probability <= 1.0))
    errors.push_back("network.drop_probability: must be in [0, 1]");
  return errors;
}

// Fate of one copy of a message on its way to one recipient.
struct Transmission {
  NodeId recipient;
  std::optional<SimTime> due;  // nullopt = dropped
};

// Draws are keyed by (seed, src, seq, recipient), so a transmission's fate
// does not depend on anything else in flight.
inline Transmission transmit(const Message& msg, NodeId recipient, const NetworkConfig& config) {
  auto rng = substream(config.seed, StreamDomain::Link, {msg.src.value, msg.seq, recipient.value});
  if (rng.uniform01() < config.drop_probability) return {recipient, std::nullopt};
  const auto latency = rng.uniform_int(config.latency_min.count(), config.latency_max.count());
  return {recipient, msg.sent_at + Duration{latency}};
}

// Expands broadcasts to one independent transmission per subscriber
// (subscribers in ascending id order).
inline std::vector<Transmission> send(const Message& msg, const NetworkConfig& config,
                                      const std::vector<NodeId>& subscribers) {
  std::vector<Transmission> out;
  if (msg.dst) {
    out.push_back(transmit(msg, *msg.dst, config));
  } else {
    out.reserve(subscribers.size());
    for (NodeId n : subscribers) out.push_back(transmit(msg, n, config));
  }
  return out;
}

enum class EventClass : std::uint8_t { Delivery = 0, SessionDeadline = 1, ActuationTick = 2 };

struct EventOrder {
  SimTime due;
  EventClass cls{EventClass::Delivery};
  NodeId src;
  std::uint64_t seq{};
  NodeId dst;
  friend auto operator<=>(const EventOrder&, const EventOrder&) = default;
};

template <class Event>
class EventQueue {
 public:
  void push(EventOrder order, Event event) {
    if (order.due < now_)
      throw ProtocolError("event scheduled in the past: due " + std::to_string(order.due.us) +
                          "us, now " + std::to_string(now_.us) + "us");
    heap_.push(Entry{order, std::move(event)});
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime now() const { return now_; }
  const EventOrder& top_order() const { return heap_.top().order; }

  std::pair<EventOrder, Event> pop() {
    Entry e = heap_.top();
    heap_.pop();
    now_ = e.order.due;
    return {e.order, std::move(e.event)};
  }

 private:
  struct Entry {
    EventOrder order;
    Event event;
    bool operator>(const Entry& other) const { return order > other.order; }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  SimTime now_{0};
};

// Drains `queue` into `handler(order, event)` until it is empty or the next
// event is past `horizon`. The handler may push more events.
template <class Event, class Handler>
void run_events(EventQueue<Event>& queue, Handler&& handler,
                std::optional<SimTime> horizon = std::nullopt) {
  while (!queue.empty()) {
    if (horizon && queue.top_order().due > *horizon) break;
    auto [order, event] = queue.pop();
    handler(order, event);
  }
}

}  // namespace collab
