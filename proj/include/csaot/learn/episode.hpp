#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csaot/agents/system.hpp"
#include "csaot/rewards/rewards.hpp"
#include "csaot/sim/world.hpp"

namespace csaot::learn {

using nn::Vector;

enum class TerminalCause { kNone, kCollision, kCrFloor, kElCap, kPathComplete };

const char* cause_name(TerminalCause cause);
TerminalCause parse_cause(const std::string& name);

// splitmix64 of a ^ golden-ratio multiple of b.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

struct AgentTrajectory {
  sensing::Role role = sensing::Role::kDecision;
  std::vector<Vector> observations;
  std::vector<Vector> raw_actions;
  Vector log_probs;
  Vector values;
  Vector rewards;
  std::vector<bool> exploratory;

  std::size_t size() const { return rewards.size(); }
};

struct RolloutBatch {
  std::vector<AgentTrajectory> agents;
  TerminalCause cause = TerminalCause::kNone;

  std::size_t length() const { return agents.empty() ? 0 : agents.front().size(); }
};

struct Pose {
  sim::Vec2 tracker_pos;
  double tracker_heading = 0.0;
  double tracker_speed = 0.0;
  sim::Vec2 target_pos;
};

// One step as the agents saw it: pose and box are of the observed state.
struct StepEntry {
  int step = 0;
  Pose pose;
  std::vector<sim::Obstacle> obstacles;
  agents::JointAction action;
  rewards::RewardBreakdown rewards;
  std::vector<std::vector<std::size_t>> gate_selected;  // per agent
  std::vector<Vector> gate_weights;                     // per agent
  std::optional<sensing::BBox> truth_box;
};

struct EpisodeRecord {
  std::string map;
  std::string method;
  std::uint64_t seed = 0;
  std::vector<StepEntry> steps;  // empty unless requested
  int el = 0;
  double cr = 0.0;      // clamped to min_cr on a CR-floor termination
  double cr_raw = 0.0;  // exact sum of global rewards
  TerminalCause cause = TerminalCause::kNone;
};

struct EpisodeOptions {
  double epsilon = 0.0;
  agents::ActMode mode = agents::ActMode::kSample;
  rewards::RewardWeights weights;
  bool record_steps = false;
  bool collect = true;  // keep per-agent trajectories for an update
};

struct EpisodeResult {
  RolloutBatch batch;
  EpisodeRecord record;
};

// Resets the agents' memory, then alternates agent step, world step and
// rewards until collision, CR floor, step cap, or the target finishing its
// path, checked in that order.
EpisodeResult run_episode(agents::AgentSystem& system, const sim::World& world, std::uint64_t seed,
                          const EpisodeOptions& options);

}  // namespace csaot::learn
