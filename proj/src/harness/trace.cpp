#include "csaot/harness/trace.hpp"

#include <sstream>

#include "csaot/errors.hpp"
#include "csaot/sim/maps.hpp"

namespace csaot::harness {

namespace {

json vec(sim::Vec2 v) { return json::array({v.x, v.y}); }

json obstacle_json(const sim::Obstacle& o) {
  if (o.kind == sim::Obstacle::Kind::kCircle) return {{"kind", "circle"}, {"center", vec(o.center)}, {"radius", o.radius}};
  return {{"kind", "rect"}, {"min", vec(o.lo())}, {"max", vec(o.hi())}};
}

json box_json(const std::optional<sensing::BBox>& b) {
  if (!b) return nullptr;
  return json::array({b->x_l, b->y_l, b->x_r, b->y_r});
}

}  // namespace

json trace_header(const learn::EpisodeRecord& record, const sim::MapSpec& map, const sensing::CameraModel& camera) {
  return {{"type", "header"},
          {"map", record.map},
          {"method", record.method},
          {"seed", record.seed},
          {"map_spec", sim::map_to_json(map)},
          {"camera",
           {{"hfov", camera.hfov}, {"d_max", camera.d_max}, {"frame_w", camera.frame_w}, {"frame_h", camera.frame_h}}}};
}

json trace_step(const learn::StepEntry& e) {
  json obstacles = json::array();
  for (const auto& o : e.obstacles) obstacles.push_back(obstacle_json(o));
  json gates = json::array();
  for (std::size_t i = 0; i < e.gate_selected.size(); ++i)
    gates.push_back({{"selected", e.gate_selected[i]}, {"weights", e.gate_weights[i]}});
  const auto& r = e.rewards;
  return {{"type", "step"},
          {"step", e.step},
          {"tracker",
           {{"x", e.pose.tracker_pos.x},
            {"y", e.pose.tracker_pos.y},
            {"heading", e.pose.tracker_heading},
            {"speed", e.pose.tracker_speed}}},
          {"target", {{"x", e.pose.target_pos.x}, {"y", e.pose.target_pos.y}}},
          {"obstacles", obstacles},
          {"action",
           {{"a_d", e.action.a_d},
            {"a_n", e.action.a_n},
            {"a_a", e.action.a_a},
            {"nav", json::array({e.action.nav.accel, e.action.nav.steer})}}},
          {"rewards",
           {{"track", r.r_track},
            {"nav", r.r_nav},
            {"move", r.r_move},
            {"steer", r.r_steer},
            {"diff", r.r_diff},
            {"detect", r.r_detect},
            {"obstacle", r.r_obstacle},
            {"movement", r.r_movement},
            {"collision", r.collision},
            {"global", r.global}}},
          {"gates", gates},
          {"bbox", box_json(e.truth_box)}};
}

json trace_summary(const learn::EpisodeRecord& record) {
  return {{"type", "summary"},
          {"el", record.el},
          {"cr", record.cr},
          {"cr_raw", record.cr_raw},
          {"cause", learn::cause_name(record.cause)}};
}

std::string trace_text(const learn::EpisodeRecord& record, const sim::MapSpec& map,
                       const sensing::CameraModel& camera) {
  std::string out = trace_header(record, map, camera).dump() + "\n";
  for (const auto& e : record.steps) out += trace_step(e).dump() + "\n";
  out += trace_summary(record).dump() + "\n";
  return out;
}

void write_trace(const std::string& path, const learn::EpisodeRecord& record, const sim::MapSpec& map,
                 const sensing::CameraModel& camera) {
  write_text_file(path, trace_text(record, map, camera));
}

Trace parse_trace(const std::string& text, const std::string& where) {
  Trace t;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const std::string lw = where + ":" + std::to_string(n);
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(lw + ": " + e.what());
    }
    const std::string type = need_string(doc, "type", lw);
    if (type == "header")
      t.header = doc;
    else if (type == "step")
      t.steps.push_back(doc);
    else if (type == "summary")
      t.summary = doc;
    else
      throw ParseError(lw + ".type: unknown line type '" + type + "'");
  }
  return t;
}

Trace read_trace(const std::string& path) { return parse_trace(read_text_file(path), path); }

}  // namespace csaot::harness
