#include "csaot/harness/checkpoint.hpp"

#include "csaot/errors.hpp"
#include "csaot/nn/serialize.hpp"

namespace csaot::harness {

namespace {

constexpr const char* kFormat = "csaot-checkpoint";
constexpr int kVersion = 1;

}  // namespace

json checkpoint_to_json(agents::AgentSystem& system, const RunConfig& config, const CheckpointMeta& meta) {
  json agents_doc = json::array();
  for (auto& a : system.agents()) {
    const auto params = a.parameters();
    agents_doc.push_back({{"name", a.name()},
                          {"role", agents::role_name(a.role())},
                          {"obs_dim", a.obs_dim()},
                          {"action_dim", a.act_dim()},
                          {"params", nn::params_to_json(params)},
                          {"adam", nn::adam_to_json(a.optimizer, params)}});
  }
  return {{"format", kFormat},
          {"version", kVersion},
          {"method", agents::method_name(system.method())},
          {"map", meta.map},
          {"seed", meta.seed},
          {"episodes_done", meta.episodes_done},
          {"epsilon", meta.epsilon},
          {"config", config_to_json(config)},
          {"agents", agents_doc}};
}

LoadedCheckpoint checkpoint_from_json(const json& doc, std::optional<agents::Method> expected_method,
                                      const std::optional<agents::NetworkConfig>& expected_network) {
  const std::string where = "checkpoint";
  if (need_string(doc, "format", where) != kFormat) throw ParseError("checkpoint.format: not a checkpoint");
  if (need_integer(doc, "version", where) != kVersion) throw ParseError("checkpoint.version: unsupported");

  const std::string method_text = need_string(doc, "method", where);
  agents::Method method;
  try {
    method = agents::parse_method(method_text);
  } catch (const InputError&) {
    throw ParseError("checkpoint.method: unknown method '" + method_text + "'");
  }
  if (expected_method && *expected_method != method)
    throw MismatchError(std::string("checkpoint holds a ") + agents::method_name(method) + " system, expected " +
                        agents::method_name(*expected_method));

  RunConfig config = config_from_json(need(doc, "config", where));
  if (expected_network && !(*expected_network == config.network))
    throw MismatchError("checkpoint network architecture differs from the configuration");

  CheckpointMeta meta;
  meta.map = need_string(doc, "map", where);
  const json& seed = need(doc, "seed", where);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw ParseError("checkpoint.seed: expected an integer");
  meta.seed = seed.get<std::uint64_t>();
  meta.episodes_done = static_cast<int>(need_integer(doc, "episodes_done", where));
  meta.epsilon = need_number(doc, "epsilon", where);

  LoadedCheckpoint out{agents::AgentSystem(method, config.network, config.sensors()), config, meta};
  const json& agents_doc = need(doc, "agents", where);
  if (!agents_doc.is_array()) throw ParseError("checkpoint.agents: expected an array");
  auto& list = out.system.agents();
  if (agents_doc.size() != list.size())
    throw MismatchError("checkpoint has " + std::to_string(agents_doc.size()) + " agents, a " +
                        agents::method_name(method) + " system needs " + std::to_string(list.size()));
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string aw = "checkpoint.agents[" + std::to_string(i) + "]";
    const json& ad = agents_doc[i];
    if (need_string(ad, "name", aw) != list[i].name()) throw MismatchError(aw + ".name: expected " + list[i].name());
    if (need_string(ad, "role", aw) != agents::role_name(list[i].role()))
      throw MismatchError(aw + ".role: expected " + agents::role_name(list[i].role()));
    if (static_cast<std::size_t>(need_integer(ad, "obs_dim", aw)) != list[i].obs_dim())
      throw MismatchError(aw + ".obs_dim: does not match the sensor configuration");
    const auto params = list[i].parameters();
    nn::params_from_json(need(ad, "params", aw), params, aw + ".params");
    nn::adam_from_json(need(ad, "adam", aw), list[i].optimizer, params, aw + ".adam");
  }
  return out;
}

void save_checkpoint(const std::string& path, agents::AgentSystem& system, const RunConfig& config,
                     const CheckpointMeta& meta) {
  write_text_file(path, checkpoint_to_json(system, config, meta).dump() + "\n");
}

LoadedCheckpoint load_checkpoint(const std::string& path, std::optional<agents::Method> expected_method,
                                 const std::optional<agents::NetworkConfig>& expected_network) {
  return checkpoint_from_json(read_json_file(path), expected_method, expected_network);
}

}  // namespace csaot::harness
