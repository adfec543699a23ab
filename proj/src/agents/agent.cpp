#include "csaot/agents/agent.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "csaot/errors.hpp"
#include "csaot/nn/gaussian.hpp"

namespace csaot::agents {

void NetworkConfig::validate() const {
  if (encoder_hidden == 0 || embed == 0 || memory == 0 || critic_hidden == 0)
    throw InputError("network widths must be positive");
  mop.validate();
}

bool NetworkConfig::operator==(const NetworkConfig& o) const {
  return encoder_hidden == o.encoder_hidden && embed == o.embed && memory == o.memory &&
         critic_hidden == o.critic_hidden && mop.experts == o.mop.experts && mop.k == o.mop.k &&
         mop.expert_hidden == o.mop.expert_hidden && mop.balance_coef == o.mop.balance_coef;
}

std::size_t action_dim(Role role) {
  switch (role) {
    case Role::kDetection: return 4;
    case Role::kMovement: return 2;
    case Role::kObstacle: return 1;
    case Role::kDecision: return 2;
  }
  throw InputError("unknown role");
}

const char* role_name(Role role) {
  switch (role) {
    case Role::kDetection: return "detection";
    case Role::kMovement: return "movement";
    case Role::kObstacle: return "obstacle";
    case Role::kDecision: return "decision";
  }
  return "?";
}

AgentCore::AgentCore(Role role, std::size_t obs_dim, const NetworkConfig& config, const std::string& name)
    : encoder(name + ".encoder", {obs_dim, config.encoder_hidden, config.embed}),
      memory(name + ".memory", config.embed, config.memory),
      actor(name + ".actor", config.memory, action_dim(role), config.mop),
      critic(name + ".critic", {config.memory, config.critic_hidden, 1}),
      lstm_state(nn::LstmState::zeros(config.memory)),
      role_(role),
      name_(name),
      obs_dim_(obs_dim),
      memory_width_(config.memory) {
  config.validate();
  if (obs_dim == 0) throw InputError("agent observation size must be positive");
}

void AgentCore::init(nn::Rng& rng) {
  encoder.init(rng);
  memory.init(rng);
  actor.init(rng);
  critic.init(rng);
  reset_state();
}

void AgentCore::reset_state() { lstm_state = nn::LstmState::zeros(memory_width_); }

Vector AgentCore::encode(const Vector& obs) {
  if (obs.size() != obs_dim_)
    throw InputError(name_ + ": observation has " + std::to_string(obs.size()) + " entries, expected " +
                     std::to_string(obs_dim_));
  nn::Tape tape(nn::Tape::Mode::kInference);
  Var e = encoder.forward(tape.constant(obs));
  nn::LstmVars next = memory.forward(e, {tape.constant(lstm_state.hidden), tape.constant(lstm_state.cell)});
  lstm_state = {next.hidden.value(), next.cell.value()};
  return lstm_state.hidden;
}

ActResult AgentCore::act(const Vector& encoded, nn::Rng& rng, double epsilon, ActMode mode) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InputError("act: epsilon must lie in [0, 1]");
  nn::Tape tape(nn::Tape::Mode::kInference);
  Var e = tape.constant(encoded);
  mop::MopOutput p = actor.forward(e);
  ActResult out;
  out.value = critic.forward(e).scalar();
  out.selected = p.selected;
  out.gate_weights = p.weights;
  const Vector& mean = p.head.mean.value();
  const Vector& log_std = p.head.log_std.value();
  if (mode == ActMode::kMean) {
    out.raw = mean;
  } else {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
      std::uniform_real_distribution<double> squashed(-kExploreBound, kExploreBound);
      out.raw.resize(mean.size());
      for (double& r : out.raw) r = std::atanh(squashed(rng));
      out.exploratory = true;
    } else {
      out.raw = nn::sample_raw(mean, log_std, rng);
    }
  }
  out.log_prob = nn::gaussian_log_prob(mean, log_std, out.raw);
  return out;
}

AgentPass AgentCore::forward(const Var& obs, const nn::LstmVars& state) {
  if (obs.size() != obs_dim_) throw InputError(name_ + ": observation size mismatch");
  AgentPass pass;
  pass.state = memory.forward(encoder.forward(obs), state);
  pass.policy = actor.forward(pass.state.hidden);
  pass.value = critic.forward(pass.state.hidden);
  return pass;
}

nn::LstmVars AgentCore::zero_state(nn::Tape& tape) const {
  return {tape.constant(Vector(memory_width_, 0.0)), tape.constant(Vector(memory_width_, 0.0))};
}

std::vector<nn::ParamTensor*> AgentCore::parameters() {
  std::vector<nn::ParamTensor*> out;
  encoder.collect(out);
  memory.collect(out);
  actor.collect(out);
  critic.collect(out);
  return out;
}

std::size_t AgentCore::parameter_count() { return nn::parameter_count(parameters()); }

namespace {

void require_raw(const Vector& raw, std::size_t n, const char* what) {
  if (raw.size() != n) throw InputError(std::string(what) + ": wrong action size");
  for (double r : raw)
    if (std::isnan(r)) throw InputError(std::string(what) + ": NaN action");
}

double unit(double raw) { return (std::tanh(raw) + 1.0) / 2.0; }

}  // namespace

std::array<double, 4> decode_detection(const Vector& raw) {
  require_raw(raw, 4, "decode_detection");
  const double x0 = unit(raw[0]), y0 = unit(raw[1]), x1 = unit(raw[2]), y1 = unit(raw[3]);
  return {std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
}

std::array<double, 2> decode_movement(const Vector& raw) {
  require_raw(raw, 2, "decode_movement");
  return {unit(raw[0]), unit(raw[1])};
}

double decode_obstacle(const Vector& raw, double d_max) {
  require_raw(raw, 1, "decode_obstacle");
  return unit(raw[0]) * d_max;
}

sim::NavAction decode_navigation(const Vector& raw, const sim::VehicleParams& vehicle) {
  require_raw(raw, 2, "decode_navigation");
  return {std::tanh(raw[0]) * vehicle.max_accel_action, std::tanh(raw[1]) * vehicle.max_steer_action};
}

}  // namespace csaot::agents
