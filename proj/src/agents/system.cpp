#include "csaot/agents/system.hpp"

#include "csaot/errors.hpp"

namespace csaot::agents {

const char* method_name(Method method) { return method == Method::kCsaot ? "csaot" : "single"; }

Method parse_method(const std::string& name) {
  if (name == "csaot") return Method::kCsaot;
  if (name == "single") return Method::kSingle;
  throw InputError("unknown method '" + name + "' (expected csaot or single)");
}

sensing::FirstLayerOutputs first_layer_outputs(const JointAction& action) {
  sensing::FirstLayerOutputs out;
  out.bbox = action.a_d;
  out.center = action.a_n;
  out.obstacle_distance = action.a_a;
  return out;
}

namespace {

AgentDecision run_agent(AgentCore& agent, Vector obs, nn::Rng& rng, double epsilon, ActMode mode) {
  AgentDecision d;
  d.role = agent.role();
  const Vector e = agent.encode(obs);
  d.act = agent.act(e, rng, epsilon, mode);
  d.observation = std::move(obs);
  return d;
}

}  // namespace

SystemStep csaot_step(std::vector<AgentCore>& agents, const sim::WorldState& state, const sensing::Sensors& sensors,
                      nn::Rng& rng, double epsilon, ActMode mode) {
  if (agents.size() != sensing::kRoleCount) throw InputError("csaot_step: need four agents");
  for (std::size_t i = 0; i < agents.size(); ++i)
    if (agents[i].role() != static_cast<Role>(i)) throw InputError("csaot_step: agents out of role order");

  const sensing::Observation common = sensing::observe(state, sensors);
  const Vector flat = common.flatten();
  SystemStep out;
  for (std::size_t i = 0; i < 3; ++i) out.decisions.push_back(run_agent(agents[i], flat, rng, epsilon, mode));

  out.action.a_d = decode_detection(out.decisions[0].act.raw);
  out.action.a_n = decode_movement(out.decisions[1].act.raw);
  out.action.a_a = decode_obstacle(out.decisions[2].act.raw, sensors.camera.d_max);

  const sensing::Observation dec = sensing::with_first_layer(common, first_layer_outputs(out.action), sensors.camera);
  out.decisions.push_back(run_agent(agents[3], dec.flatten(), rng, epsilon, mode));
  out.action.nav = decode_navigation(out.decisions[3].act.raw, sensors.vehicle);
  return out;
}

SystemStep single_agent_step(AgentCore& agent, const sim::WorldState& state, const sensing::Sensors& sensors,
                             nn::Rng& rng, double epsilon, ActMode mode) {
  if (agent.role() != Role::kDecision) throw InputError("single_agent_step: agent must navigate");
  SystemStep out;
  out.decisions.push_back(run_agent(agent, sensing::observe(state, sensors).flatten(), rng, epsilon, mode));
  out.action.nav = decode_navigation(out.decisions[0].act.raw, sensors.vehicle);
  return out;
}

AgentSystem::AgentSystem(Method method, const NetworkConfig& config, const sensing::Sensors& sensors)
    : method_(method), config_(config), sensors_(sensors) {
  config_.validate();
  const std::size_t common = sensors.raster.size() + sensing::kProprioSize;
  if (method == Method::kCsaot) {
    for (std::size_t i = 0; i < sensing::kRoleCount; ++i) {
      const Role role = static_cast<Role>(i);
      const std::size_t dim = role == Role::kDecision ? common + sensing::kFirstLayerSize : common;
      agents_.emplace_back(role, dim, config_, role_name(role));
    }
  } else {
    agents_.emplace_back(Role::kDecision, common, config_, "single");
  }
}

void AgentSystem::init(std::uint64_t seed) {
  nn::Rng rng(seed);
  for (auto& a : agents_) a.init(rng);
}

void AgentSystem::reset_states() {
  for (auto& a : agents_) a.reset_state();
}

SystemStep AgentSystem::step(const sim::WorldState& state, nn::Rng& rng, double epsilon, ActMode mode) {
  if (method_ == Method::kCsaot) return csaot_step(agents_, state, sensors_, rng, epsilon, mode);
  return single_agent_step(agents_.front(), state, sensors_, rng, epsilon, mode);
}

std::size_t AgentSystem::parameter_count() {
  std::size_t n = 0;
  for (auto& a : agents_) n += a.parameter_count();
  return n;
}

}  // namespace csaot::agents
