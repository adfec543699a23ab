#include "csaot/sensing/observation.hpp"

#include "csaot/errors.hpp"

namespace csaot::sensing {

Vector Observation::flatten() const {
  Vector out;
  out.reserve(size());
  out.insert(out.end(), raster.begin(), raster.end());
  out.insert(out.end(), proprio.begin(), proprio.end());
  if (first_layer) out.insert(out.end(), first_layer->begin(), first_layer->end());
  return out;
}

std::size_t Observation::size() const {
  return raster.size() + proprio.size() + (first_layer ? first_layer->size() : 0);
}

std::array<double, kProprioSize> proprioception(const sim::WorldState& state, const sim::VehicleParams& vehicle) {
  return {state.tracker_speed / vehicle.v_max, state.last_accel / (vehicle.max_accel_action * vehicle.accel_scale),
          state.last_steer / vehicle.max_steer_action};
}

Observation observe(const sim::WorldState& state, const Sensors& sensors) {
  Observation o;
  o.raster = render_raster(state, sensors.raster);
  o.proprio = proprioception(state, sensors.vehicle);
  o.visible = project_bbox(state, sensors.camera).has_value();
  return o;
}

Observation with_first_layer(Observation common, const FirstLayerOutputs& outputs, const CameraModel& camera) {
  if (common.first_layer) throw InputError("with_first_layer: observation already carries first-layer inputs");
  common.first_layer = std::array<double, kFirstLayerSize>{
      outputs.bbox[0],   outputs.bbox[1],   outputs.bbox[2], outputs.bbox[3],
      outputs.center[0], outputs.center[1], outputs.obstacle_distance / camera.d_max};
  return common;
}

std::array<Observation, kRoleCount> assemble_observations(const sim::WorldState& state, const Sensors& sensors,
                                                          const std::optional<FirstLayerOutputs>& first_layer) {
  const Observation common = observe(state, sensors);
  std::array<Observation, kRoleCount> out{common, common, common, common};
  if (first_layer) out[static_cast<std::size_t>(Role::kDecision)] = with_first_layer(common, *first_layer, sensors.camera);
  return out;
}

}  // namespace csaot::sensing
