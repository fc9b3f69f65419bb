#pragma once

// Single runs, Monte Carlo sweeps across seeds and semantics, and the
// metrics files they produce.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "collab/metrics.hpp"
#include "collab/scenario.hpp"
#include "collab/simulation.hpp"

namespace collab {

inline RunResult run_once(const Scenario& scenario, AggregationSemantics semantics,
                          std::uint64_t seed, RunOptions options = {}) {
  return Simulation(scenario, semantics, seed, options).run();
}

struct SweepRun {
  AggregationSemantics semantics{};
  std::uint64_t seed{};
  RunResult result;
};

struct SweepArm {
  AggregationSemantics semantics{};
  RunMetrics totals;
};

struct SweepResult {
  std::vector<SweepArm> arms;  // sorted by semantics name
  std::vector<SweepRun> runs;  // arm-major, then ascending seed
  std::uint64_t seeds{};
  TruthMode truth{TruthMode::Fixed};
};

// Seeds are scenario.network.seed, +1, ..., +(seeds - 1). Every arm sees the
// same seeds, so perception draws are paired across semantics. Runs execute
// on up to `threads` workers (0 = hardware concurrency); results are merged
// in seed order so the outcome does not depend on scheduling.
inline SweepResult run_sweep(const Scenario& scenario,
                             std::vector<AggregationSemantics> semantics, std::uint64_t seeds,
                             TruthMode truth, unsigned threads = 0) {
  std::sort(semantics.begin(), semantics.end(),
            [](auto a, auto b) { return to_string(a) < to_string(b); });
  semantics.erase(std::unique(semantics.begin(), semantics.end()), semantics.end());

  SweepResult sweep;
  sweep.seeds = seeds;
  sweep.truth = truth;
  for (auto sem : semantics)
    for (std::uint64_t i = 0; i < seeds; ++i)
      sweep.runs.push_back({sem, scenario.network.seed + i, {}});

  RunOptions options{truth, /*record_trace=*/false};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sweep.runs.size(); i = next++)
      sweep.runs[i].result = run_once(scenario, sweep.runs[i].semantics, sweep.runs[i].seed,
                                      options);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, sweep.runs.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (auto sem : semantics) {
    SweepArm arm{sem, {}};
    arm.totals.semantics = sem;
    for (const auto& run : sweep.runs)
      if (run.semantics == sem) arm.totals.merge(run.result.metrics);
    sweep.arms.push_back(std::move(arm));
  }
  return sweep;
}

// One record per decided session, then a final summary record.
inline void write_run_metrics(std::ostream& os, const RunResult& run) {
  for (const auto& o : run.outcomes) {
    const bool correct = (o.decision.verdict == Verdict::Stop) == o.pedestrian_present;
    nlohmann::ordered_json j{{"session", o.decision.session.value},
                             {"pedestrian_present", o.pedestrian_present},
                             {"verdict", to_string(o.decision.verdict)},
                             {"correct", correct},
                             {"used_claims", o.decision.used_claims.size()},
                             {"excluded_claims", o.decision.excluded_claims.size()}};
    if (!o.decision.ranking.empty()) j["expert"] = o.decision.ranking.front().value;
    os << j.dump() << '\n';
  }
  os << nlohmann::ordered_json{{"summary", to_json(run.metrics)}}.dump() << '\n';
}

inline void write_summary_csv(std::ostream& os, const SweepResult& sweep) {
  os << "semantics,seeds,decisions,stops,gos,false_go,false_stop,error_rate,"
        "excluded_unknown_node,excluded_malformed_evidence,excluded_duplicate,excluded_late\n";
  os << std::setprecision(6) << std::fixed;
  for (const auto& arm : sweep.arms) {
    const auto& m = arm.totals;
    os << to_string(arm.semantics) << ',' << sweep.seeds << ',' << m.decisions << ',' << m.stops
       << ',' << m.gos << ',' << m.false_go << ',' << m.false_stop << ',' << m.error_rate();
    for (auto reason : kExclusionReasons) os << ',' << m.exclusions.at(reason);
    os << '\n';
  }
}

// Solo counterfactual error per node; identical across arms by pairing, so
// the first arm is reported.
inline void write_solo_csv(std::ostream& os, const SweepResult& sweep) {
  os << "node,claims,errors,error_rate\n";
  if (sweep.arms.empty()) return;
  os << std::setprecision(6) << std::fixed;
  for (const auto& [node, s] : sweep.arms.front().totals.solo) {
    os << node.value << ',' << s.claims << ',' << s.errors << ',';
    if (auto r = s.error_rate()) os << *r;
    os << '\n';
  }
}

inline void write_human_summary(std::ostream& os, const SweepResult& sweep) {
  os << "sweep: " << sweep.seeds << " seed(s), truth " << to_string(sweep.truth) << '\n';
  os << std::left << std::setw(26) << "semantics" << std::right << std::setw(10) << "decisions"
     << std::setw(10) << "false_go" << std::setw(11) << "false_stop" << std::setw(12)
     << "error_rate" << '\n';
  for (const auto& arm : sweep.arms) {
    const auto& m = arm.totals;
    os << std::left << std::setw(26) << to_string(arm.semantics) << std::right << std::setw(10)
       << m.decisions << std::setw(10) << m.false_go << std::setw(11) << m.false_stop
       << std::setw(12) << std::setprecision(4) << std::fixed << m.error_rate() << '\n';
  }
  if (!sweep.arms.empty()) {
    os << "solo counterfactual error per node:\n";
    for (const auto& [node, s] : sweep.arms.front().totals.solo) {
      os << "  node " << node.value << ": ";
      if (auto r = s.error_rate())
        os << std::setprecision(4) << std::fixed << *r;
      else
        os << "n/a";
      os << " over " << s.claims << " claims\n";
    }
  }
}

// Writes <stem>__<semantics>__seed<N>.jsonl per run plus <stem>__summary.csv
// and <stem>__solo.csv. Returns the paths written, in order.
inline std::vector<std::filesystem::path> write_sweep_files(const std::filesystem::path& dir,
                                                            const std::string& stem,
                                                            const SweepResult& sweep) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    written.push_back(dir / name);
    std::ofstream out(written.back());
    if (!out) throw std::runtime_error("cannot write " + written.back().string());
    return out;
  };
  for (const auto& run : sweep.runs) {
    auto out = open(stem + "__" + std::string(to_string(run.semantics)) + "__seed" +
                    std::to_string(run.seed) + ".jsonl");
    write_run_metrics(out, run.result);
  }
  {
    auto out = open(stem + "__summary.csv");
    write_summary_csv(out, sweep);
  }
  {
    auto out = open(stem + "__solo.csv");
    write_solo_csv(out, sweep);
  }
  return written;
}

}  // namespace collab
