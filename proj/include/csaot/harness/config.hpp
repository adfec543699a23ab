#pragma once

#include <string>

#include "csaot/agents/agent.hpp"
#include "csaot/harness/json_io.hpp"
#include "csaot/learn/trainer.hpp"
#include "csaot/rewards/rewards.hpp"
#include "csaot/sensing/observation.hpp"

namespace csaot::harness {

struct RunConfig {
  learn::TrainConfig train;
  agents::NetworkConfig network;
  rewards::RewardWeights rewards;
  sim::VehicleParams vehicle;
  sensing::CameraModel camera;
  sensing::RasterSpec raster;

  void validate() const;
  sensing::Sensors sensors() const { return {camera, raster, vehicle}; }
};

json config_to_json(const RunConfig& config);
// Starts from defaults; every present field overrides. Unknown keys and
// ill-typed values raise ParseError naming the field.
RunConfig config_from_json(const json& doc);
RunConfig load_config(const std::string& path);

}  // namespace csaot::harness
