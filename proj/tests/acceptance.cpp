// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "collab/collab.hpp"
#include "support/aggregation_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/trace_checks.hpp"

namespace {

using namespace collab;
namespace ct = collab::testing;

struct Outcome {
  bool pass{};
  std::string detail;
};

// 1. Expert-led stop on the bundled intersection scenario.
Outcome expert_stop_on_intersection() {
  const auto s = load_scenario(ct::scenario_path("fig1.scenario"));
  if (s.sessions != 10'000 || s.network.drop_probability != 0.0)
    return {false, "bundled scenario is not 10000 lossless sessions"};
  auto run = run_once(s, AggregationSemantics::ExpertOverride, s.network.seed,
                      {TruthMode::Fixed, false});
  std::uint64_t expert_detected = 0, violations = 0;
  for (const auto& o : run.outcomes) {
    const auto& d = o.decision;
    if (d.ranking.empty()) continue;
    auto it = std::find_if(d.used_claims.begin(), d.used_claims.end(),
                           [&](const Claim& c) { return c.node == d.ranking.front(); });
    if (it->detection == Detection::PedestrianDetected) {
      ++expert_detected;
      violations += d.verdict != Verdict::Stop;
    }
  }
  const double stop_rate = run.metrics.stop_rate();
  std::ostringstream os;
  os << "stop rate " << stop_rate << " over " << run.metrics.decisions
     << " sessions (need >= 0.97); expert detected in " << expert_detected << ", " << violations
     << " of those not stopped";
  return {run.metrics.decisions == 10'000 && stop_rate >= 0.97 && violations == 0, os.str()};
}

// 2. Same three claims, different rules, different verdicts.
Outcome semantics_divergence() {
  const auto claims = ct::fig1_claims();
  const auto ranking = rank(claims);
  const auto expert = decide(claims, ranking, AggregationSemantics::ExpertOverride);
  const auto majority = decide(claims, ranking, AggregationSemantics::Majority);
  std::ostringstream os;
  os << "expert-override " << to_string(expert) << ", majority " << to_string(majority);
  return {expert == Verdict::Stop && majority == Verdict::Go, os.str()};
}

// 3. Majority of three iid nodes beats each of them.
Outcome collaboration_gain() {
  auto s = load_scenario(ct::scenario_path("iid3.scenario"));
  s.sessions = 100'000;
  const double p = 0.1;
  const double analytic = 3 * p * p * (1 - p) + p * p * p;
  auto run = run_once(s, AggregationSemantics::Majority, s.network.seed,
                      {TruthMode::Alternating, false});
  const double err = run.metrics.error_rate();
  std::ostringstream os;
  os << "aggregate error " << err << " vs analytic " << analytic << " (tolerance 0.005) over "
     << run.metrics.decisions << " sessions";
  return {run.metrics.decisions == 100'000 && std::abs(err - analytic) <= 0.005, os.str()};
}

// 4. Total communication loss always stops.
Outcome fail_safe_under_total_loss() {
  auto s = load_scenario(ct::scenario_path("fig1.scenario"));
  s.network.drop_probability = 1.0;
  s.sessions = 1'000;
  bool pass = true;
  std::ostringstream os;
  for (auto sem : kAllSemantics) {
    auto run = run_once(s, sem, s.network.seed, {TruthMode::Alternating, false});
    pass = pass && run.metrics.decisions == 1'000 && run.metrics.stops == 1'000 &&
           run.metrics.false_go == 0;
    os << to_string(sem) << " " << run.metrics.stops << "/" << run.metrics.decisions
       << " stop, false_go " << run.metrics.false_go << "; ";
  }
  return {pass, os.str()};
}

// 5. decide() against the enumeration oracle.
Outcome aggregation_oracle() {
  std::uint64_t cases = 0, mismatches = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<NodeId> ranking;
      for (int node : perm) ranking.push_back(NodeId{static_cast<std::uint32_t>(node + 1)});
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Claim> claims;
        for (int node = 0; node < n; ++node) {
          const auto pos = static_cast<int>(std::find(perm.begin(), perm.end(), node) - perm.begin());
          claims.push_back(ct::make_claim(static_cast<std::uint32_t>(node + 1),
                                          (mask >> pos & 1u) ? Detection::PedestrianDetected
                                                             : Detection::Clear,
                                          ct::rgb(), 1.0));
        }
        for (auto sem : kAllSemantics) {
          ++cases;
          mismatches += decide(claims, ranking, sem) != ct::oracle_verdict(sem, mask, n);
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::ostringstream os;
  os << mismatches << " mismatches over " << cases << " cases";
  return {mismatches == 0, os.str()};
}

// 6. Byte-identical traces on replay.
Outcome determinism() {
  std::mt19937_64 rng(20240601);
  int identical = 0;
  for (int i = 0; i < 20; ++i) {
    auto s = ct::random_scenario(rng);
    const auto sem = kAllSemantics[rng() % kAllSemantics.size()];
    const auto seed = rng();
    const auto a = serialize(run_once(s, sem, seed).trace);
    const auto b = serialize(run_once(s, sem, seed).trace);
    identical += !a.empty() && a == b;
  }
  return {identical == 20, std::to_string(identical) + "/20 scenarios byte-identical"};
}

// 7. Latency beyond the window: everything late, everything stops.
Outcome timeliness() {
  auto s = load_scenario(ct::scenario_path("fig1.scenario"));
  s.network.latency_min = s.network.latency_max = Duration{60'000};
  s.session_window = Duration{50'000};
  s.settle_interval = Duration{60'000};
  s.sessions = 500;
  auto run = run_once(s, AggregationSemantics::Majority, s.network.seed);
  const NodeId master = s.master().id;
  std::uint64_t delivered = 0, late = 0, other = 0;
  for (const auto& r : run.trace) {
    if (auto* d = ct::as<trace::Delivered>(r)) delivered += ct::is_claim_to(d->msg, master);
    if (auto* e = ct::as<trace::ClaimExcluded>(r))
      (e->reason == ExclusionReason::Late ? late : other)++;
    if (ct::as<trace::ClaimAccepted>(r)) ++other;
  }
  const auto stops = static_cast<std::uint64_t>(
      std::count_if(run.outcomes.begin(), run.outcomes.end(),
                    [](const auto& o) { return o.decision.verdict == Verdict::Stop; }));
  const auto conservation = ct::check_conservation(run.trace, master);
  std::ostringstream os;
  os << late << "/" << delivered << " claims late, " << other << " otherwise handled; " << stops
     << "/" << run.outcomes.size() << " stop; " << conservation.size()
     << " conservation violations";
  return {delivered > 0 && late == delivered && other == 0 && stops == s.sessions &&
              run.outcomes.size() == s.sessions && conservation.empty(),
          os.str()};
}

// 8. Actuation commands ordered by id and never interleaved across sessions.
Outcome actuation_ordering() {
  std::mt19937_64 rng(8080);
  std::uint64_t violations = 0, commands = 0;
  for (int i = 0; i < 100; ++i) {
    auto s = ct::random_scenario(rng);
    auto run = run_once(s, kAllSemantics[rng() % kAllSemantics.size()], rng());
    violations += ct::check_actuation_order(run.trace).size();
    for (const auto& r : run.trace)
      if (auto* m = ct::as<trace::Sent>(r)) commands += m->msg.kind() == MessageKind::ActuationCmd;
  }
  std::ostringstream os;
  os << violations << " violations over " << commands << " commands in 100 scenarios";
  return {violations == 0 && commands > 0, os.str()};
}

// 9. Ranking properties, exhaustive over a small evidence domain.
Outcome trust_ranking() {
  struct Evidence {
    SensorKind kind;
    double distance;
    double fn;
  };
  std::vector<Evidence> domain;
  for (auto k : {SensorKind::Lidar, SensorKind::OpticalCamera, SensorKind::RgbCamera})
    for (double d : {1.0, 2.0})
      for (double fn : {0.1, 0.2}) domain.push_back({k, d, fn});
  const auto m = domain.size();

  std::mt19937_64 rng(99);
  std::uint64_t sets = 0, violations = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::size_t> pick(n, 0);
    for (;;) {
      std::vector<Claim> claims;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& e = domain[pick[i]];
        claims.push_back(ct::make_claim(static_cast<std::uint32_t>(i + 1), Detection::Clear,
                                        {e.kind, e.fn, 0.05, 30.0}, e.distance));
      }
      ++sets;
      const auto ranking = rank(claims);
      // Pairwise oracle: position = number of strictly better claims.
      std::vector<NodeId> expected(n);
      std::vector<int> hits(n, 0);
      for (std::size_t a = 0; a < n; ++a) {
        std::size_t better = 0;
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b) continue;
          const auto ka = trust_key(claims[a]), kb = trust_key(claims[b]);
          if ((ka < kb) == (kb < ka)) ++violations;  // not strictly ordered
          better += kb > ka;
        }
        ++hits[better];
        expected[better] = claims[a].node;
      }
      if (std::any_of(hits.begin(), hits.end(), [](int h) { return h != 1; })) ++violations;
      if (ranking != expected) ++violations;
      if (sets % 31 == 0) {
        std::shuffle(claims.begin(), claims.end(), rng);
        if (rank(claims) != ranking) ++violations;
      }

      std::size_t i = 0;
      while (i < n && ++pick[i] == m) pick[i++] = 0;
      if (i == n) break;
    }
  }
  // Transitivity over random key triples.
  std::uniform_int_distribution<std::size_t> any(0, m - 1);
  for (int t = 0; t < 200'000; ++t) {
    std::array<TrustKey, 3> k;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& e = domain[any(rng)];
      k[i] = trust_key(ct::make_claim(static_cast<std::uint32_t>(rng() % 4), Detection::Clear,
                                      {e.kind, e.fn, 0.05, 30.0}, e.distance));
    }
    if (k[0] < k[1] && k[1] < k[2] && !(k[0] < k[2])) ++violations;
    if (k[0] < k[1] && k[1] < k[0]) ++violations;
  }
  std::ostringstream os;
  os << violations << " violations over " << sets << " claim sets";
  return {violations == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 expert-led stop on the intersection scenario", expert_stop_on_intersection},
      {"AC2 semantics divergence on the three-claim example", semantics_divergence},
      {"AC3 collaboration reliability gain (majority of 3 iid)", collaboration_gain},
      {"AC4 fail-safe under total loss", fail_safe_under_total_loss},
      {"AC5 aggregation matches enumeration oracle", aggregation_oracle},
      {"AC6 deterministic byte-identical traces", determinism},
      {"AC7 timeliness: late claims excluded, conservation holds", timeliness},
      {"AC8 actuation ordering and session gating", actuation_ordering},
      {"AC9 trust ranking properties", trust_ranking},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("[%s] %s: %s (%lld ms)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                o.detail.c_str(), static_cast<long long>(ms));
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
