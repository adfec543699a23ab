#include "csaot/harness/config.hpp"

#include <set>

#include "csaot/errors.hpp"

namespace csaot::harness {

namespace {

// Reads known keys of one section and rejects anything else.
class Section {
 public:
  Section(const json& doc, const std::string& name) : doc_(doc), name_(name) {
    if (!doc.is_object()) throw ParseError("config." + name + ": expected an object");
  }

  void number(const char* key, double& field) {
    seen_.insert(key);
    if (auto it = doc_.find(key); it != doc_.end()) {
      if (!it->is_number()) throw ParseError(where(key) + ": expected a number");
      field = it->get<double>();
    }
  }

  template <typename Int>
  void integer(const char* key, Int& field) {
    seen_.insert(key);
    if (auto it = doc_.find(key); it != doc_.end()) {
      if (!it->is_number_integer()) throw ParseError(where(key) + ": expected an integer");
      const auto v = it->get<std::int64_t>();
      if (v < 0) throw ParseError(where(key) + ": must be non-negative");
      field = static_cast<Int>(v);
    }
  }

  void finish() const {
    for (auto it = doc_.begin(); it != doc_.end(); ++it)
      if (!seen_.count(it.key())) throw ParseError(where(it.key()) + ": unknown field");
  }

 private:
  std::string where(const std::string& key) const { return "config." + name_ + "." + key; }

  const json& doc_;
  std::string name_;
  std::set<std::string> seen_;
};

template <typename F>
void section(const json& doc, const char* name, F&& read) {
  auto it = doc.find(name);
  if (it == doc.end()) return;
  Section s(*it, name);
  read(s);
  s.finish();
}

}  // namespace

void RunConfig::validate() const {
  train.validate();
  network.validate();
  rewards.validate();
  camera.validate();
  if (raster.cells < 1 || !(raster.window > 0.0) || !(raster.target_radius >= 0.0))
    throw InputError("raster spec must have positive cells and window");
  if (!(vehicle.dt > 0.0) || !(vehicle.v_max > 0.0) || !(vehicle.wheelbase > 0.0) || !(vehicle.tracker_radius > 0.0))
    throw InputError("vehicle constants must be positive");
}

json config_to_json(const RunConfig& c) {
  const auto& t = c.train;
  const auto& n = c.network;
  const auto& r = c.rewards;
  const auto& v = c.vehicle;
  const auto& cam = c.camera;
  return {
      {"train",
       {{"gamma", t.gamma},
        {"gae_lambda", t.gae_lambda},
        {"clip", t.clip},
        {"epochs", t.epochs},
        {"lr", t.lr},
        {"epsilon0", t.epsilon0},
        {"epsilon_decay", t.epsilon_decay},
        {"epsilon_floor", t.epsilon_floor},
        {"episodes", t.episodes},
        {"value_coef", t.value_coef},
        {"entropy_coef", t.entropy_coef},
        {"grad_clip", t.grad_clip}}},
      {"network",
       {{"encoder_hidden", n.encoder_hidden},
        {"embed", n.embed},
        {"memory", n.memory},
        {"critic_hidden", n.critic_hidden},
        {"experts", n.mop.experts},
        {"k", n.mop.k},
        {"expert_hidden", n.mop.expert_hidden},
        {"balance_coef", n.mop.balance_coef}}},
      {"rewards",
       {{"track", r.track},
        {"nav", r.nav},
        {"diff", r.diff},
        {"detect", r.detect},
        {"obstacle", r.obstacle},
        {"movement", r.movement},
        {"collision_penalty", r.collision_penalty},
        {"standstill_penalty", r.standstill_penalty}}},
      {"vehicle",
       {{"dt", v.dt},
        {"accel_scale", v.accel_scale},
        {"v_max", v.v_max},
        {"wheelbase", v.wheelbase},
        {"tracker_radius", v.tracker_radius},
        {"max_accel_action", v.max_accel_action},
        {"max_steer_action", v.max_steer_action},
        {"spawn_lateral_jitter", v.spawn_lateral_jitter},
        {"spawn_heading_jitter", v.spawn_heading_jitter}}},
      {"camera",
       {{"frame_w", cam.frame_w},
        {"frame_h", cam.frame_h},
        {"hfov", cam.hfov},
        {"cam_height", cam.cam_height},
        {"target_width", cam.target_width},
        {"target_height", cam.target_height},
        {"d_max", cam.d_max},
        {"fov_rays", cam.fov_rays}}},
      {"raster", {{"cells", c.raster.cells}, {"window", c.raster.window}, {"target_radius", c.raster.target_radius}}},
  };
}

RunConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("config: expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    static const std::set<std::string> known{"train", "network", "rewards", "vehicle", "camera", "raster"};
    if (!known.count(it.key())) throw ParseError("config." + it.key() + ": unknown section");
  }
  RunConfig c;
  section(doc, "train", [&](Section& s) {
    auto& t = c.train;
    s.number("gamma", t.gamma);
    s.number("gae_lambda", t.gae_lambda);
    s.number("clip", t.clip);
    s.integer("epochs", t.epochs);
    s.number("lr", t.lr);
    s.number("epsilon0", t.epsilon0);
    s.number("epsilon_decay", t.epsilon_decay);
    s.number("epsilon_floor", t.epsilon_floor);
    s.integer("episodes", t.episodes);
    s.number("value_coef", t.value_coef);
    s.number("entropy_coef", t.entropy_coef);
    s.number("grad_clip", t.grad_clip);
  });
  section(doc, "network", [&](Section& s) {
    auto& n = c.network;
    s.integer("encoder_hidden", n.encoder_hidden);
    s.integer("embed", n.embed);
    s.integer("memory", n.memory);
    s.integer("critic_hidden", n.critic_hidden);
    s.integer("experts", n.mop.experts);
    s.integer("k", n.mop.k);
    s.integer("expert_hidden", n.mop.expert_hidden);
    s.number("balance_coef", n.mop.balance_coef);
  });
  section(doc, "rewards", [&](Section& s) {
    auto& r = c.rewards;
    s.number("track", r.track);
    s.number("nav", r.nav);
    s.number("diff", r.diff);
    s.number("detect", r.detect);
    s.number("obstacle", r.obstacle);
    s.number("movement", r.movement);
    s.number("collision_penalty", r.collision_penalty);
    s.number("standstill_penalty", r.standstill_penalty);
  });
  section(doc, "vehicle", [&](Section& s) {
    auto& v = c.vehicle;
    s.number("dt", v.dt);
    s.number("accel_scale", v.accel_scale);
    s.number("v_max", v.v_max);
    s.number("wheelbase", v.wheelbase);
    s.number("tracker_radius", v.tracker_radius);
    s.number("max_accel_action", v.max_accel_action);
    s.number("max_steer_action", v.max_steer_action);
    s.number("spawn_lateral_jitter", v.spawn_lateral_jitter);
    s.number("spawn_heading_jitter", v.spawn_heading_jitter);
  });
  section(doc, "camera", [&](Section& s) {
    auto& cam = c.camera;
    s.number("frame_w", cam.frame_w);
    s.number("frame_h", cam.frame_h);
    s.number("hfov", cam.hfov);
    s.number("cam_height", cam.cam_height);
    s.number("target_width", cam.target_width);
    s.number("target_height", cam.target_height);
    s.number("d_max", cam.d_max);
    s.integer("fov_rays", cam.fov_rays);
  });
  section(doc, "raster", [&](Section& s) {
    s.integer("cells", c.raster.cells);
    s.number("window", c.raster.window);
    s.number("target_radius", c.raster.target_radius);
  });
  try {
    c.validate();
  } catch (const InputError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

}  // namespace csaot::harness
