#include "csaot/learn/episode.hpp"

#include "csaot/errors.hpp"

namespace csaot::learn {

const char* cause_name(TerminalCause cause) {
  switch (cause) {
    case TerminalCause::kNone: return "none";
    case TerminalCause::kCollision: return "collision";
    case TerminalCause::kCrFloor: return "cr_floor";
    case TerminalCause::kElCap: return "el_cap";
    case TerminalCause::kPathComplete: return "path_complete";
  }
  return "none";
}

TerminalCause parse_cause(const std::string& name) {
  for (TerminalCause c : {TerminalCause::kNone, TerminalCause::kCollision, TerminalCause::kCrFloor,
                          TerminalCause::kElCap, TerminalCause::kPathComplete})
    if (name == cause_name(c)) return c;
  throw ParseError("unknown terminal cause '" + name + "'");
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

double stream_reward(sensing::Role role, const rewards::RewardBreakdown& r) {
  switch (role) {
    case sensing::Role::kDetection: return r.r_detect;
    case sensing::Role::kMovement: return r.r_movement;
    case sensing::Role::kObstacle: return r.r_obstacle;
    case sensing::Role::kDecision: return r.global;
  }
  return r.global;
}

}  // namespace

EpisodeResult run_episode(agents::AgentSystem& system, const sim::World& world, std::uint64_t seed,
                          const EpisodeOptions& options) {
  const sim::MapSpec& map = world.map();
  const sensing::CameraModel& cam = system.sensors().camera;
  EpisodeResult out;
  out.record.map = map.name;
  out.record.method = agents::method_name(system.method());
  out.record.seed = seed;
  if (options.collect) {
    for (const auto& a : system.agents()) {
      out.batch.agents.emplace_back();
      out.batch.agents.back().role = a.role();
    }
  }

  system.reset_states();
  nn::Rng rng(mix_seed(seed, 1));
  sim::WorldState state = world.reset(seed);
  double prev_dv = 0.0;
  double cr = 0.0;
  int el = 0;
  TerminalCause cause = TerminalCause::kNone;

  while (cause == TerminalCause::kNone) {
    const std::optional<sensing::BBox> observed_box = sensing::project_bbox(state, cam);
    const double observed_distance = sensing::nearest_obstacle_distance(state, cam);
    agents::SystemStep step = system.step(state, rng, options.epsilon, options.mode);
    const sim::WorldState next = world.step(state, step.action.nav);
    const bool collided = world.check_collision(next);

    rewards::StepInputs in;
    in.observed_box = observed_box;
    in.result_box = sensing::project_bbox(next, cam);
    in.observed_obstacle_distance = observed_distance;
    in.speed_before = state.tracker_speed;
    in.accel = step.action.nav.accel;
    in.prev_accel = prev_dv;
    in.steer = step.action.nav.steer;
    const auto& d = step.action.a_d;
    in.predicted_box = {d[0] * cam.frame_w, d[1] * cam.frame_h, d[2] * cam.frame_w, d[3] * cam.frame_h};
    in.predicted_center = {step.action.a_n[0] * cam.frame_w, step.action.a_n[1] * cam.frame_h};
    in.predicted_distance = step.action.a_a;
    in.collided = collided;
    const rewards::RewardBreakdown r = rewards::compute_rewards(in, options.weights, cam);

    if (options.collect) {
      for (std::size_t i = 0; i < step.decisions.size(); ++i) {
        AgentTrajectory& t = out.batch.agents[i];
        agents::AgentDecision& dec = step.decisions[i];
        t.observations.push_back(std::move(dec.observation));
        t.raw_actions.push_back(dec.act.raw);
        t.log_probs.push_back(dec.act.log_prob);
        t.values.push_back(dec.act.value);
        t.rewards.push_back(stream_reward(dec.role, r));
        t.exploratory.push_back(dec.act.exploratory);
      }
    }
    if (options.record_steps) {
      StepEntry e;
      e.step = el;
      e.pose = {state.tracker_pos, state.tracker_heading, state.tracker_speed, state.target_pos};
      e.obstacles = state.obstacles;
      e.action = step.action;
      e.rewards = r;
      for (const auto& dec : step.decisions) {
        e.gate_selected.push_back(dec.act.selected);
        e.gate_weights.push_back(dec.act.gate_weights);
      }
      e.truth_box = observed_box;
      out.record.steps.push_back(std::move(e));
    }

    cr += r.global;
    ++el;
    prev_dv = step.action.nav.accel;
    state = next;

    if (collided)
      cause = TerminalCause::kCollision;
    else if (cr < map.min_cr)
      cause = TerminalCause::kCrFloor;
    else if (el >= map.max_el)
      cause = TerminalCause::kElCap;
    else if (state.path_complete)
      cause = TerminalCause::kPathComplete;
  }

  out.batch.cause = cause;
  out.record.el = el;
  out.record.cr_raw = cr;
  out.record.cr = cause == TerminalCause::kCrFloor ? map.min_cr : cr;
  out.record.cause = cause;
  return out;
}

}  // namespace csaot::learn
