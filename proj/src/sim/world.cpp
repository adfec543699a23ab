#include "csaot/sim/world.hpp"

#include <algorithm>
#include <random>

#include "csaot/errors.hpp"

namespace csaot::sim {

void MapSpec::validate() const {
  if (waypoints.size() < 2) throw InputError("map " + name + ": needs at least two waypoints");
  if (!(target_speed >= 0.0)) throw InputError("map " + name + ": negative target speed");
  if (!(bounds.lo.x < bounds.hi.x && bounds.lo.y < bounds.hi.y)) throw InputError("map " + name + ": empty bounds");
  if (!bounds.contains(spawn.position)) throw InputError("map " + name + ": spawn outside bounds");
  if (max_el <= 0) throw InputError("map " + name + ": max_el must be positive");
  for (const auto& ob : obstacles) {
    if (!ob.valid()) throw InputError("map " + name + ": obstacle with non-positive size");
    if (ob.motion && ob.motion->path.size() < 2) throw InputError("map " + name + ": motion path too short");
  }
}

World::World(MapSpec map, VehicleParams params)
    : map_(std::move(map)), params_(params), target_path_(map_.waypoints) {
  map_.validate();
  for (const auto& ob : map_.obstacles)
    obstacle_paths_.push_back(ob.motion ? Polyline(ob.motion->path) : Polyline());
}

void World::place_dynamic(WorldState& state) const {
  for (std::size_t i = 0; i < state.obstacles.size(); ++i) {
    const auto& ob = map_.obstacles[i];
    if (!ob.motion) continue;
    const Polyline& path = obstacle_paths_[i];
    state.obstacles[i].center = path.point_at(path.ping_pong(state.dynamic_phases[i]));
  }
}

WorldState World::reset(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double lateral = params_.spawn_lateral_jitter * unit(rng);
  const double heading_noise = params_.spawn_heading_jitter * unit(rng);

  WorldState s;
  const double h = map_.spawn.heading;
  s.tracker_pos = map_.spawn.position + Vec2{-std::sin(h), std::cos(h)} * lateral;
  s.tracker_heading = h + heading_noise;
  s.target_path_progress = 0.0;
  s.target_pos = target_path_.point_at(0.0);
  s.obstacles = map_.obstacles;
  s.dynamic_phases.assign(map_.obstacles.size(), 0.0);
  for (std::size_t i = 0; i < map_.obstacles.size(); ++i) {
    if (map_.obstacles[i].motion) s.dynamic_phases[i] = obstacle_paths_[i].length() * (1.0 + unit(rng));
  }
  place_dynamic(s);
  s.rng_state = seed;
  return s;
}

TargetAdvance World::advance_target(double progress, double dt) const {
  const double len = target_path_.length();
  TargetAdvance out;
  out.progress = std::clamp(progress + map_.target_speed * dt, 0.0, len);
  out.position = target_path_.point_at(out.progress);
  out.complete = out.progress >= len;
  return out;
}

WorldState World::step(const WorldState& state, NavAction nav, double dt) const {
  if (!(dt > 0.0)) throw InputError("step: dt must be positive");
  if (!(std::abs(nav.accel) <= params_.max_accel_action) || !(std::abs(nav.steer) <= params_.max_steer_action))
    throw InputError("step: navigation action outside the admissible box");

  WorldState next = state;
  next.tracker_speed = std::clamp(state.tracker_speed + nav.accel * dt * params_.accel_scale, 0.0, params_.v_max);
  next.tracker_heading =
      wrap_angle(state.tracker_heading + next.tracker_speed / params_.wheelbase * std::tan(nav.steer) * dt);
  next.tracker_pos = state.tracker_pos + Vec2::from_angle(next.tracker_heading) * (next.tracker_speed * dt);
  next.last_accel = nav.accel * params_.accel_scale;
  next.last_steer = nav.steer;

  const TargetAdvance target = advance_target(state.target_path_progress, dt);
  next.target_path_progress = target.progress;
  next.target_pos = target.position;
  next.path_complete = target.complete;

  for (std::size_t i = 0; i < next.obstacles.size(); ++i) {
    if (map_.obstacles[i].motion) next.dynamic_phases[i] += map_.obstacles[i].motion->speed * dt;
  }
  place_dynamic(next);
  next.step_index = state.step_index + 1;
  return next;
}

bool disc_collides(Vec2 center, double radius, const std::vector<Obstacle>& obstacles, const Rect& bounds) {
  if (center.x - radius < bounds.lo.x || center.x + radius > bounds.hi.x || center.y - radius < bounds.lo.y ||
      center.y + radius > bounds.hi.y)
    return true;
  for (const auto& ob : obstacles) {
    if (ob.distance_to(center) < radius) return true;
  }
  return false;
}

bool World::check_collision(const WorldState& state) const {
  return disc_collides(state.tracker_pos, params_.tracker_radius, state.obstacles, map_.bounds);
}

}  // namespace csaot::sim
