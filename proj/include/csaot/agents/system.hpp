#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csaot/agents/agent.hpp"

namespace csaot::agents {

enum class Method { kCsaot, kSingle };

const char* method_name(Method method);
// Throws InputError for anything other than "csaot" or "single".
Method parse_method(const std::string& name);

struct AgentDecision {
  Role role = Role::kDecision;
  Vector observation;
  ActResult act;
};

struct SystemStep {
  JointAction action;
  // CSAOT: detection, movement, obstacle, decision. Single: one entry.
  std::vector<AgentDecision> decisions;
};

sensing::FirstLayerOutputs first_layer_outputs(const JointAction& action);

// First layer acts on the common observation, then the decision agent sees
// it with their decoded actions appended. agents must be in role order.
SystemStep csaot_step(std::vector<AgentCore>& agents, const sim::WorldState& state, const sensing::Sensors& sensors,
                      nn::Rng& rng, double epsilon, ActMode mode = ActMode::kSample);
// One pipeline from the common observation straight to navigation.
SystemStep single_agent_step(AgentCore& agent, const sim::WorldState& state, const sensing::Sensors& sensors,
                             nn::Rng& rng, double epsilon, ActMode mode = ActMode::kSample);

class AgentSystem {
 public:
  AgentSystem(Method method, const NetworkConfig& config, const sensing::Sensors& sensors);

  void init(std::uint64_t seed);
  void reset_states();
  SystemStep step(const sim::WorldState& state, nn::Rng& rng, double epsilon, ActMode mode = ActMode::kSample);

  Method method() const { return method_; }
  const NetworkConfig& config() const { return config_; }
  const sensing::Sensors& sensors() const { return sensors_; }
  std::vector<AgentCore>& agents() { return agents_; }
  const std::vector<AgentCore>& agents() const { return agents_; }
  std::size_t parameter_count();

 private:
  Method method_;
  NetworkConfig config_;
  sensing::Sensors sensors_;
  std::vector<AgentCore> agents_;
};

}  // namespace csaot::agents
