#pragma once

// The master's session protocol: open a frame, collect claims until the
// deadline, decide once, close. Sessions are strictly sequential.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "collab/aggregation.hpp"
#include "collab/errors.hpp"
#include "collab/trust.hpp"
#include "collab/types.hpp"

namespace collab {

enum class SessionPhase { Collecting, Decided, Closed };

inline std::string_view to_string(SessionPhase p) {
  switch (p) {
    case SessionPhase::Collecting: return "collecting";
    case SessionPhase::Decided: return "decided";
    case SessionPhase::Closed: return "closed";
  }
  return "?";
}

struct SessionStart {
  SessionId id;
  SimTime deadline;
  friend bool operator==(const SessionStart&, const SessionStart&) = default;
};

struct SessionState {
  SessionId id;
  SimTime opened_at;
  SimTime deadline;
  SessionPhase phase{SessionPhase::Collecting};
  std::map<NodeId, Claim> received;
  std::vector<Exclusion> exclusions;
};

using Roster = std::set<NodeId>;

// Records `claim` in `state`. Returns nullopt when accepted, otherwise the
// exclusion reason that was appended. Claims arriving after the decision are
// still recorded (as exclusions) so every delivered claim is accounted for.
inline std::optional<ExclusionReason> accept_claim(SessionState& state, const Claim& claim,
                                                   SimTime arrival, const Roster& roster) {
  if (state.phase == SessionPhase::Closed)
    throw ProtocolError("accept_claim: session " + std::to_string(state.id.value) +
                        " is closed");

  std::optional<ExclusionReason> reason;
  if (!roster.contains(claim.node)) {
    reason = ExclusionReason::UnknownNode;
  } else if (!evidence_valid(claim)) {
    reason = ExclusionReason::MalformedEvidence;
  } else if (claim.session == state.id && state.received.contains(claim.node)) {
    reason = ExclusionReason::Duplicate;
  } else if (claim.session != state.id || arrival > state.deadline ||
             state.phase != SessionPhase::Collecting) {
    reason = ExclusionReason::Late;
  }

  if (reason)
    state.exclusions.push_back({claim, *reason});
  else
    state.received.emplace(claim.node, claim);
  return reason;
}

// Builds the decision for a session whose deadline has passed. An empty
// claim set yields Stop with an empty ranking.
inline Decision close_and_decide(SessionState& state, SimTime now,
                                 AggregationSemantics semantics) {
  if (state.phase != SessionPhase::Collecting)
    throw ProtocolError("close_and_decide: session " + std::to_string(state.id.value) +
                        " is " + std::string(to_string(state.phase)));
  if (now < state.deadline)
    throw ProtocolError("close_and_decide: called at " + std::to_string(now.us) +
                        "us before deadline " + std::to_string(state.deadline.us) + "us");

  Decision d;
  d.session = state.id;
  d.semantics = semantics;
  d.decided_at = now;
  d.excluded_claims = state.exclusions;
  for (const auto& [node, claim] : state.received) d.used_claims.push_back(claim);

  if (d.used_claims.empty()) {
    d.verdict = Verdict::Stop;
  } else {
    d.ranking = rank(d.used_claims);
    d.verdict = decide(d.used_claims, d.ranking, semantics);
  }
  state.phase = SessionPhase::Decided;
  return d;
}

// Owns the master's session sequence and enforces sequentiality.
class SessionController {
 public:
  explicit SessionController(Roster roster) : roster_(std::move(roster)) {}

  SessionStart open(SimTime now, Duration window) {
    if (current_ && current_->phase != SessionPhase::Closed)
      throw ProtocolError("open_session: session " + std::to_string(current_->id.value) +
                          " is still " + std::string(to_string(current_->phase)));
    if (window.count() <= 0) throw ProtocolError("open_session: window must be positive");
    last_id_ = last_id_.next();
    current_ = SessionState{last_id_, now, now + window, SessionPhase::Collecting, {}, {}};
    return {current_->id, current_->deadline};
  }

  // Returns the session the claim was booked against (nullopt when no session
  // was ever opened or the last one is closed) and the exclusion reason.
  struct Booking {
    std::optional<SessionId> session;
    std::optional<ExclusionReason> exclusion;
  };

  Booking accept(const Claim& claim, SimTime arrival) {
    if (!current_ || current_->phase == SessionPhase::Closed)
      return {std::nullopt, ExclusionReason::Late};
    return {current_->id, accept_claim(*current_, claim, arrival, roster_)};
  }

  Decision decide(SimTime now, AggregationSemantics semantics) {
    if (!current_) throw ProtocolError("close_and_decide: no session open");
    return close_and_decide(*current_, now, semantics);
  }

  void close() {
    if (!current_ || current_->phase != SessionPhase::Decided)
      throw ProtocolError("close: session must be decided before closing");
    current_->phase = SessionPhase::Closed;
  }

  const std::optional<SessionState>& current() const { return current_; }
  SessionId last_id() const { return last_id_; }

 private:
  Roster roster_;
  SessionId last_id_{0};
  std::optional<SessionState> current_;
};

}  // namespace collab
