#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "csaot/mop/mop.hpp"
#include "csaot/nn/adam.hpp"
#include "csaot/nn/layers.hpp"
#include "csaot/sensing/observation.hpp"

namespace csaot::agents {

using nn::Var;
using nn::Vector;
using sensing::Role;

struct NetworkConfig {
  std::size_t encoder_hidden = 128;
  std::size_t embed = 64;
  std::size_t memory = 64;
  std::size_t critic_hidden = 32;
  mop::MopConfig mop;

  void validate() const;
  bool operator==(const NetworkConfig& o) const;
};

// 4 / 2 / 1 / 2 for detection / movement / obstacle / decision.
std::size_t action_dim(Role role);
const char* role_name(Role role);

// Exploratory actions are drawn uniformly in the squashed space, kept just
// inside the open interval so the pre-squash value stays finite.
inline constexpr double kExploreBound = 0.999;

enum class ActMode { kSample, kMean };

struct ActResult {
  Vector raw;
  double log_prob = 0.0;
  double value = 0.0;
  bool exploratory = false;
  std::vector<std::size_t> selected;
  Vector gate_weights;
};

// Outputs of one pass through an agent recorded on a caller tape.
struct AgentPass {
  nn::LstmVars state;
  mop::MopOutput policy;
  Var value;
};

class AgentCore {
 public:
  AgentCore() = default;
  AgentCore(Role role, std::size_t obs_dim, const NetworkConfig& config, const std::string& name);

  void init(nn::Rng& rng);
  void reset_state();

  // MLP then LSTM; advances lstm_state and returns the new hidden state.
  Vector encode(const Vector& obs);
  Vector encode(const sensing::Observation& obs) { return encode(obs.flatten()); }
  // Samples (or, in kMean mode, takes the blended mean of) the MoP policy.
  ActResult act(const Vector& encoded, nn::Rng& rng, double epsilon, ActMode mode = ActMode::kSample);

  // Full pipeline on a caller tape; used to replay an episode for updates.
  AgentPass forward(const Var& obs, const nn::LstmVars& state);
  nn::LstmVars zero_state(nn::Tape& tape) const;

  std::vector<nn::ParamTensor*> parameters();
  std::size_t parameter_count();

  Role role() const { return role_; }
  const std::string& name() const { return name_; }
  std::size_t obs_dim() const { return obs_dim_; }
  std::size_t act_dim() const { return action_dim(role_); }

  nn::Mlp encoder;
  nn::LstmCell memory;
  mop::MoPNetwork actor;
  nn::Mlp critic;
  nn::LstmState lstm_state;
  nn::Adam optimizer;

 private:
  Role role_ = Role::kDecision;
  std::string name_;
  std::size_t obs_dim_ = 0;
  std::size_t memory_width_ = 0;
};

// Role actions after the tanh squash and the affine map to role bounds.
struct JointAction {
  std::array<double, 4> a_d{};  // x_l, y_l, x_r, y_r as frame fractions
  std::array<double, 2> a_n{};  // center as frame fractions
  double a_a = 0.0;             // meters
  sim::NavAction nav;
};

std::array<double, 4> decode_detection(const Vector& raw);
std::array<double, 2> decode_movement(const Vector& raw);
double decode_obstacle(const Vector& raw, double d_max);
sim::NavAction decode_navigation(const Vector& raw, const sim::VehicleParams& vehicle);

}  // namespace csaot::agents
