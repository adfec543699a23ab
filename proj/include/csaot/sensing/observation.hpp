#pragma once

#include <array>
#include <optional>

#include "csaot/nn/tape.hpp"
#include "csaot/sensing/camera.hpp"
#include "csaot/sim/world.hpp"

namespace csaot::sensing {

using nn::Vector;

// Egocentric occupancy window: `cells` x `cells` over [0, window] forward
// and [-window/2, window/2] lateral, three channels (obstacle, target, free)
// stored channel-major. Row index runs forward, column index runs from
// right (-y) to left (+y).
struct RasterSpec {
  int cells = 32;
  double window = 20.0;  // m
  double target_radius = 0.5;

  std::size_t channel_size() const { return static_cast<std::size_t>(cells) * cells; }
  std::size_t size() const { return 3 * channel_size(); }
  double cell_size() const { return window / cells; }
  // Cell center in the tracker frame (x forward, y left).
  sim::Vec2 cell_center(int row, int col) const;
};

enum class Channel { kObstacle = 0, kTarget = 1, kFree = 2 };

Vector render_raster(const sim::WorldState& state, const RasterSpec& spec);
// Serial reference for render_raster; results are identical.
Vector render_raster_serial(const sim::WorldState& state, const RasterSpec& spec);

// Predictions of the three first-layer agents, in the units they are appended
// to the decision observation: box and center as frame fractions, obstacle
// distance in meters.
struct FirstLayerOutputs {
  std::array<double, 4> bbox{};
  std::array<double, 2> center{};
  double obstacle_distance = 0.0;
};

inline constexpr std::size_t kProprioSize = 3;
inline constexpr std::size_t kFirstLayerSize = 7;

struct Observation {
  Vector raster;
  std::array<double, kProprioSize> proprio{};
  std::optional<std::array<double, kFirstLayerSize>> first_layer;
  bool visible = false;

  // raster, proprio, then first_layer when present.
  Vector flatten() const;
  std::size_t size() const;
};

struct Sensors {
  CameraModel camera;
  RasterSpec raster;
  sim::VehicleParams vehicle;
};

// Proprioception normalized to [-1, 1]: speed / v_max, applied acceleration
// over its bound, steering over its bound.
std::array<double, kProprioSize> proprioception(const sim::WorldState& state, const sim::VehicleParams& vehicle);

// Observation shared by the first-layer agents.
Observation observe(const sim::WorldState& state, const Sensors& sensors);
// Decision-agent input: the common observation plus first-layer predictions
// (obstacle distance scaled by d_max).
Observation with_first_layer(Observation common, const FirstLayerOutputs& outputs, const CameraModel& camera);

enum class Role { kDetection = 0, kMovement = 1, kObstacle = 2, kDecision = 3 };
inline constexpr std::size_t kRoleCount = 4;

// Index by Role. The decision entry carries first_layer iff one is supplied.
std::array<Observation, kRoleCount> assemble_observations(const sim::WorldState& state, const Sensors& sensors,
                                                          const std::optional<FirstLayerOutputs>& first_layer);

}  // namespace csaot::sensing
