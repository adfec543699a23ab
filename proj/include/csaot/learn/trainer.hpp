#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csaot/learn/episode.hpp"
#include "csaot/learn/ppo.hpp"

namespace csaot::learn {

struct TrainConfig {
  double gamma = 1.0;
  double gae_lambda = 0.95;
  double clip = 0.2;
  int epochs = 2;
  double lr = 0.003;
  double epsilon0 = 0.99;
  double epsilon_decay = 0.9;
  double epsilon_floor = 0.02;
  int episodes = 50;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  double grad_clip = 5.0;

  void validate() const;
  PpoConfig ppo() const { return {clip, value_coef, entropy_coef}; }
};

double epsilon_schedule(int episode, double epsilon0 = 0.99, double decay = 0.9, double floor = 0.02);

struct AgentUpdate {
  int optimizer_steps = 0;
  std::vector<double> losses;
  bool aborted = false;
  std::string incident;
};

// Runs config.epochs passes of loss, backward, clip and Adam over one
// agent's trajectory. A non-finite loss or gradient restores the agent as it
// was before the call.
AgentUpdate update_agent(agents::AgentCore& agent, const AgentTrajectory& trajectory, const TrainConfig& config,
                         double balance_coef = 0.0);
// Each agent learns from its own trajectory and reward stream.
std::vector<AgentUpdate> update_agents(agents::AgentSystem& system, const RolloutBatch& batch,
                                       const TrainConfig& config);

struct EpisodeLog {
  int episode = 0;
  double epsilon = 0.0;
  int el = 0;
  double cr = 0.0;
  double cr_raw = 0.0;
  TerminalCause cause = TerminalCause::kNone;
  int aborted_updates = 0;
};

class Trainer {
 public:
  Trainer(agents::AgentSystem& system, sim::World world, TrainConfig config, rewards::RewardWeights weights,
          std::uint64_t seed);

  EpisodeLog run_episode();
  std::vector<EpisodeLog> run(int episodes);

  int episodes_done() const { return episode_; }
  void set_episodes_done(int n) { episode_ = n; }
  double epsilon() const;

 private:
  agents::AgentSystem& system_;
  sim::World world_;
  TrainConfig config_;
  rewards::RewardWeights weights_;
  std::uint64_t seed_;
  int episode_ = 0;
};

}  // namespace csaot::learn
