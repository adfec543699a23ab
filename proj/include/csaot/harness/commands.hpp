#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "csaot/agents/system.hpp"
#include "csaot/learn/episode.hpp"
#include "csaot/rewards/rewards.hpp"
#include "csaot/sim/world.hpp"

namespace csaot::harness {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitBadArgs = 2, kExitIo = 3, kExitMismatch = 4 };

struct TrainArgs {
  std::string map;
  std::optional<int> episodes;  // falls back to the configuration (50)
  std::uint64_t seed = 0;
  std::string method = "csaot";
  std::optional<std::string> config;
  std::string out;
};

struct EvalArgs {
  std::string checkpoint;
  std::string map;
  int episodes = 10;
  std::vector<std::uint64_t> seeds{0};
  std::string out;
  std::optional<std::string> config;  // architecture must match the checkpoint
  std::optional<std::string> method;  // likewise
  bool write_traces = true;
};

struct EvalSummary {
  std::string map;
  std::string method;
  int episodes = 0;
  double el_mean = 0.0;
  double el_std = 0.0;
  double cr_mean = 0.0;
  double cr_std = 0.0;
};

// Means and population standard deviations of EL and reported CR.
EvalSummary summarize(const std::string& map, const std::string& method,
                      const std::vector<learn::EpisodeRecord>& records);
std::string metrics_header();
std::string metrics_row(const EvalSummary& s);

// A built-in name or the path of a map file; anything else is InputError.
sim::MapSpec resolve_map(const std::string& name);

// Seed for episode i of an evaluation over `seeds`.
std::uint64_t eval_seed(const std::vector<std::uint64_t>& seeds, int i);
// Greedy episodes (epsilon 0, mean actions), each on a private copy of the system.
std::vector<learn::EpisodeRecord> evaluate(const agents::AgentSystem& system, const sim::World& world, int episodes,
                                           const std::vector<std::uint64_t>& seeds,
                                           const rewards::RewardWeights& weights, bool record_steps);

// Seed stream used for initial weights in `train`.
std::uint64_t init_seed(std::uint64_t seed);

int train_command(const TrainArgs& args, std::ostream& out, std::ostream& err);
int eval_command(const EvalArgs& args, std::ostream& out, std::ostream& err);
int replay_command(const std::string& trace, const std::string& out_dir, std::ostream& out, std::ostream& err);
int maps_list_command(std::ostream& out);

// Runs body, mapping exceptions to exit codes with a message on err.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace csaot::harness
