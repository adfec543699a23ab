#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "csaot/agents/system.hpp"
#include "csaot/harness/config.hpp"

namespace csaot::harness {

struct CheckpointMeta {
  std::string map;
  std::uint64_t seed = 0;
  int episodes_done = 0;
  double epsilon = 0.0;
};

json checkpoint_to_json(agents::AgentSystem& system, const RunConfig& config, const CheckpointMeta& meta);

struct LoadedCheckpoint {
  agents::AgentSystem system;
  RunConfig config;
  CheckpointMeta meta;
};

// ParseError naming the offending field for corrupt documents.
// MismatchError when `expected_method` or `expected_network` disagree with
// the stored architecture.
LoadedCheckpoint checkpoint_from_json(const json& doc, std::optional<agents::Method> expected_method = std::nullopt,
                                      const std::optional<agents::NetworkConfig>& expected_network = std::nullopt);

void save_checkpoint(const std::string& path, agents::AgentSystem& system, const RunConfig& config,
                     const CheckpointMeta& meta);
LoadedCheckpoint load_checkpoint(const std::string& path, std::optional<agents::Method> expected_method = std::nullopt,
                                 const std::optional<agents::NetworkConfig>& expected_network = std::nullopt);

}  // namespace csaot::harness
