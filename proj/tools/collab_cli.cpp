// collab: command-line front end for the collaborative decision simulator.
//
//   collab validate <file>
//   collab run <file> --semantics <name> --seed <n> [--trace <out>] [--sessions <n>]
//   collab sweep <file> --semantics <a,b,...> --seeds <n> --truth <fixed|alternating> --out <dir>
//
// Exit codes: 0 success, 2 parse error, 3 validation error, 4 protocol error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collab/collab.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitProtocol = 4;

std::vector<collab::AggregationSemantics> parse_semantics_list(
    const std::vector<std::string>& names) {
  std::vector<collab::AggregationSemantics> out;
  for (const auto& n : names) {
    auto s = collab::parse_semantics(n);
    if (!s) throw CLI::ValidationError("--semantics", "unknown semantics '" + n + "'");
    out.push_back(*s);
  }
  return out;
}

std::string semantics_help() {
  std::string names;
  for (auto s : collab::kAllSemantics) {
    if (!names.empty()) names += ", ";
    names += collab::to_string(s);
  }
  return names;
}

void print_run_summary(std::ostream& os, const collab::RunResult& r,
                       const std::set<collab::NodeId>& actuated) {
  const auto& m = r.metrics;
  os << "semantics " << collab::to_string(m.semantics) << ": " << m.decisions << " decisions, "
     << m.stops << " stop, " << m.gos << " go, " << m.false_go << " false go, " << m.false_stop
     << " false stop\n";
  for (const auto& [node, motion] : r.final_motion)
    if (actuated.contains(node)) os << "  node " << node.value << " ends " << collab::to_string(motion.motion) << '\n';
  os << collab::to_json(m).dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative GO/STOP decision simulator"};
  app.require_subcommand(1);

  std::string file;

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  validate->add_option("file", file, "Scenario file")->required();

  auto* run = app.add_subcommand("run", "Run one scenario with one semantics and seed");
  run->add_option("file", file, "Scenario file")->required();
  std::string run_semantics;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::optional<std::uint64_t> sessions;
  std::string run_truth = "fixed";
  run->add_option("--semantics", run_semantics, semantics_help())->required();
  run->add_option("--seed", seed, "Random seed")->required();
  run->add_option("--trace", trace_path, "Write the NDJSON trace here");
  run->add_option("--sessions", sessions, "Override the scenario's session count");
  run->add_option("--truth", run_truth, "fixed or alternating")->check(CLI::IsMember({"fixed", "alternating"}));

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo comparison across semantics");
  sweep->add_option("file", file, "Scenario file")->required();
  std::vector<std::string> sweep_semantics;
  std::uint64_t seeds = 1;
  std::string truth = "fixed";
  std::string out_dir;
  unsigned threads = 0;
  sweep->add_option("--semantics", sweep_semantics, semantics_help())
      ->required()
      ->delimiter(',');
  sweep->add_option("--seeds", seeds, "Number of seeds")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--truth", truth, "fixed or alternating")
      ->required()
      ->check(CLI::IsMember({"fixed", "alternating"}));
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
  sweep->add_option("--sessions", sessions, "Override the scenario's session count");

  CLI11_PARSE(app, argc, argv);

  try {
    collab::Scenario scenario = collab::load_scenario(file);
    if (sessions) {
      scenario.sessions = *sessions;
      if (auto errors = collab::validate_scenario(scenario); !errors.empty())
        throw collab::ValidationError(errors);
    }

    if (*validate) {
      std::cout << file << ": ok (" << scenario.nodes.size() << " nodes, master "
                << scenario.master().id.value << ")\n";
      return 0;
    }

    if (*run) {
      auto semantics = parse_semantics_list({run_semantics}).front();
      collab::RunOptions options{*collab::parse_truth_mode(run_truth), !trace_path.empty()};
      auto result = collab::run_once(scenario, semantics, seed, options);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        if (!out) throw std::runtime_error("cannot write " + trace_path);
        collab::write_trace(out, result.trace);
      }
      print_run_summary(std::cout, result, scenario.actuated_nodes());
      return 0;
    }

    auto result = collab::run_sweep(scenario, parse_semantics_list(sweep_semantics), seeds,
                                    *collab::parse_truth_mode(truth), threads);
    const auto stem = std::filesystem::path(file).stem().string();
    auto written = collab::write_sweep_files(out_dir, stem, result);
    collab::write_human_summary(std::cout, result);
    std::cout << "wrote " << written.size() << " files to " << out_dir << '\n';
    return 0;
  } catch (const collab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const collab::ValidationError& e) {
    for (const auto& msg : e.errors()) std::cerr << "validation error: " << msg << '\n';
    return kExitValidation;
  } catch (const collab::ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kExitProtocol;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
