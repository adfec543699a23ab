#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csaot/sim/geometry.hpp"

namespace csaot::sim {

struct VehicleParams {
  double dt = 0.1;            // s per environment step
  double accel_scale = 10.0;  // maps Δv ∈ [-0.5, 0.5] to [-5, 5] m/s²
  double v_max = 5.0;         // m/s
  double wheelbase = 2.0;     // m
  double tracker_radius = 0.8;
  double max_accel_action = 0.5;
  double max_steer_action = 0.5;  // rad
  // Seeded perturbation of the spawn pose; zero gives the exact map spawn.
  double spawn_lateral_jitter = 0.5;   // m
  double spawn_heading_jitter = 0.05;  // rad
};

struct Spawn {
  Vec2 position;
  double heading = 0.0;
  double lead = 6.0;  // distance behind the first waypoint
  bool operator==(const Spawn&) const = default;
};

struct MapSpec {
  std::string name;
  std::vector<Vec2> waypoints;
  double target_speed = 2.0;
  std::vector<Obstacle> obstacles;
  Spawn spawn;
  Rect bounds;
  int max_el = 0;
  double min_cr = -150.0;

  // Throws InputError when an invariant does not hold.
  void validate() const;
  bool operator==(const MapSpec&) const = default;
};

struct NavAction {
  double accel = 0.0;  // Δv
  double steer = 0.0;  // Δα, rad; positive turns counter-clockwise
};

struct WorldState {
  Vec2 tracker_pos;
  double tracker_heading = 0.0;
  double tracker_speed = 0.0;
  double last_accel = 0.0;  // m/s² actually applied (Δv · accel_scale)
  double last_steer = 0.0;  // rad
  Vec2 target_pos;
  double target_path_progress = 0.0;
  bool path_complete = false;
  std::vector<Obstacle> obstacles;
  std::vector<double> dynamic_phases;  // one per obstacle; unused for static ones
  std::int64_t step_index = 0;
  std::uint64_t rng_state = 0;
};

struct TargetAdvance {
  double progress = 0.0;
  Vec2 position;
  bool complete = false;
};

// Map geometry plus vehicle constants; all stepping functions are pure.
class World {
 public:
  World(MapSpec map, VehicleParams params);

  const MapSpec& map() const { return map_; }
  const VehicleParams& params() const { return params_; }
  const Polyline& target_path() const { return target_path_; }

  WorldState reset(std::uint64_t seed) const;
  // Bicycle kinematics for the tracker, then target and moving obstacles.
  // Throws InputError for actions outside the admissible box or dt <= 0.
  WorldState step(const WorldState& state, NavAction nav, double dt) const;
  WorldState step(const WorldState& state, NavAction nav) const { return step(state, nav, params_.dt); }
  TargetAdvance advance_target(double progress, double dt) const;
  // Tracker disc touching an obstacle or leaving the bounds.
  bool check_collision(const WorldState& state) const;

 private:
  void place_dynamic(WorldState& state) const;

  MapSpec map_;
  VehicleParams params_;
  Polyline target_path_;
  std::vector<Polyline> obstacle_paths_;
};

bool disc_collides(Vec2 center, double radius, const std::vector<Obstacle>& obstacles, const Rect& bounds);

}  // namespace csaot::sim
