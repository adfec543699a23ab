#include "csaot/sim/maps.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "csaot/errors.hpp"

namespace csaot::sim {

using nlohmann::json;

namespace {

constexpr double kLead = 6.0;

Spawn spawn_behind(const std::vector<Vec2>& waypoints, double lead) {
  const Vec2 d = waypoints[1] - waypoints[0];
  const double heading = std::atan2(d.y, d.x);
  return {waypoints[0] - Vec2::from_angle(heading) * lead, heading, lead};
}

// Quarter arc from angle a0 to a1 (radians) around c, excluding the start point.
void append_arc(std::vector<Vec2>& pts, Vec2 c, double r, double a0, double a1, int segments) {
  for (int k = 1; k <= segments; ++k) {
    const double a = a0 + (a1 - a0) * k / segments;
    pts.push_back(c + Vec2::from_angle(a) * r);
  }
}

MapSpec single_turn() {
  MapSpec m;
  m.name = "SingleTurn";
  m.waypoints = {{0, 0}, {30, 0}, {30, 20}};
  m.spawn = spawn_behind(m.waypoints, kLead);
  m.bounds = {{-15, -15}, {45, 35}};
  m.max_el = 15;
  return m;
}

MapSpec simple_loop() {
  // Rounded 40 x 25 m rectangle, corner radius 5 m, counter-clockwise.
  constexpr double r = 5.0;
  constexpr double pi = std::numbers::pi;
  std::vector<Vec2> p = {{10, 0}, {35, 0}};
  append_arc(p, {35, 5}, r, -pi / 2, 0, 6);
  p.push_back({40, 20});
  append_arc(p, {35, 20}, r, 0, pi / 2, 6);
  p.push_back({5, 25});
  append_arc(p, {5, 20}, r, pi / 2, pi, 6);
  p.push_back({0, 5});
  append_arc(p, {5, 5}, r, pi, 3 * pi / 2, 6);
  p.push_back({10, 0});

  MapSpec m;
  m.name = "SimpleLoop";
  m.waypoints = std::move(p);
  m.spawn = spawn_behind(m.waypoints, kLead);
  m.bounds = {{-12, -12}, {52, 37}};
  m.max_el = 25;
  return m;
}

MapSpec sharp_loop() {
  MapSpec m;
  m.name = "SharpLoop";
  m.waypoints = {{24, 0}, {30, 0}, {30, 20}, {0, 20}, {0, 0}, {24, 0}};
  m.obstacles = {Obstacle::rect({8, 6}, {22, 14})};
  m.spawn = spawn_behind(m.waypoints, kLead);
  m.bounds = {{-10, -10}, {40, 30}};
  m.max_el = 45;
  return m;
}

MapSpec complex_map() {
  MapSpec m;
  m.name = "Complex";
  m.waypoints = {{0, 0},   {8, 0},   {12, 4},  {12, 10}, {4, 14},  {4, 22},  {16, 28},
                 {30, 28}, {34, 20}, {48, 20}, {52, 30}, {60, 30}, {60, 44}};
  m.obstacles = {
      Obstacle::circle({4, -4}, 1.0),  Obstacle::circle({16, 2}, 1.2),  Obstacle::circle({7, 8}, 1.0),
      Obstacle::circle({0, 18}, 1.0),  Obstacle::circle({10, 32}, 1.2), Obstacle::circle({24, 24}, 1.5),
  };
  Obstacle crossing_a = Obstacle::circle({10, -3}, 0.8);
  crossing_a.motion = Motion{{{10, -3}, {10, 7}}, 1.0};
  Obstacle crossing_b = Obstacle::circle({18, 22}, 0.8);
  crossing_b.motion = Motion{{{18, 22}, {18, 34}}, 1.5};
  m.obstacles.push_back(crossing_a);
  m.obstacles.push_back(crossing_b);
  m.spawn = spawn_behind(m.waypoints, kLead);
  m.bounds = {{-12, -12}, {70, 52}};
  m.max_el = 80;
  return m;
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

const json& need(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return doc.at(key);
}

double need_number(const json& doc, const char* key, const std::string& where) {
  const json& v = need(doc, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

Vec2 parse_vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(where + ": expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<Vec2> parse_points(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected a list of points");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_vec(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

const std::vector<std::string>& builtin_map_names() {
  static const std::vector<std::string> names = {"SingleTurn", "SimpleLoop", "SharpLoop", "Complex"};
  return names;
}

MapSpec builtin_map(const std::string& name) {
  if (name == "SingleTurn") return single_turn();
  if (name == "SimpleLoop") return simple_loop();
  if (name == "SharpLoop") return sharp_loop();
  if (name == "Complex") return complex_map();
  throw InputError("unknown map '" + name + "'");
}

json map_to_json(const MapSpec& map) {
  json obstacles = json::array();
  for (const auto& ob : map.obstacles) {
    json o;
    if (ob.kind == Obstacle::Kind::kCircle) {
      o = {{"kind", "circle"}, {"center", vec_json(ob.center)}, {"radius", ob.radius}};
    } else {
      o = {{"kind", "rect"}, {"min", vec_json(ob.lo())}, {"max", vec_json(ob.hi())}};
    }
    if (ob.motion) {
      json path = json::array();
      for (auto p : ob.motion->path) path.push_back(vec_json(p));
      o["motion"] = {{"path", path}, {"speed", ob.motion->speed}};
    }
    obstacles.push_back(o);
  }
  json waypoints = json::array();
  for (auto p : map.waypoints) waypoints.push_back(vec_json(p));
  return {
      {"name", map.name},
      {"waypoints", waypoints},
      {"target_speed", map.target_speed},
      {"obstacles", obstacles},
      {"spawn", {{"position", vec_json(map.spawn.position)}, {"heading", map.spawn.heading}, {"lead", map.spawn.lead}}},
      {"bounds", {{"min", vec_json(map.bounds.lo)}, {"max", vec_json(map.bounds.hi)}}},
      {"max_el", map.max_el},
      {"min_cr", map.min_cr},
  };
}

MapSpec map_from_json(const json& doc) {
  MapSpec m;
  const json& name = need(doc, "name", "map");
  if (!name.is_string()) throw ParseError("map.name: expected a string");
  m.name = name.get<std::string>();
  const std::string where = "map " + m.name;
  m.waypoints = parse_points(need(doc, "waypoints", where), where + ".waypoints");
  m.target_speed = need_number(doc, "target_speed", where);

  const json& obstacles = need(doc, "obstacles", where);
  if (!obstacles.is_array()) throw ParseError(where + ".obstacles: expected a list");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string ow = where + ".obstacles[" + std::to_string(i) + "]";
    const json& o = obstacles[i];
    const json& kind = need(o, "kind", ow);
    Obstacle ob;
    if (kind == "circle") {
      ob = Obstacle::circle(parse_vec(need(o, "center", ow), ow + ".center"), need_number(o, "radius", ow));
    } else if (kind == "rect") {
      ob = Obstacle::rect(parse_vec(need(o, "min", ow), ow + ".min"), parse_vec(need(o, "max", ow), ow + ".max"));
    } else {
      throw ParseError(ow + ".kind: expected 'circle' or 'rect'");
    }
    if (o.contains("motion")) {
      const json& mo = o.at("motion");
      ob.motion = Motion{parse_points(need(mo, "path", ow + ".motion"), ow + ".motion.path"),
                         need_number(mo, "speed", ow + ".motion")};
    }
    m.obstacles.push_back(ob);
  }

  const json& spawn = need(doc, "spawn", where);
  m.spawn.position = parse_vec(need(spawn, "position", where + ".spawn"), where + ".spawn.position");
  m.spawn.heading = need_number(spawn, "heading", where + ".spawn");
  m.spawn.lead = need_number(spawn, "lead", where + ".spawn");
  const json& bounds = need(doc, "bounds", where);
  m.bounds.lo = parse_vec(need(bounds, "min", where + ".bounds"), where + ".bounds.min");
  m.bounds.hi = parse_vec(need(bounds, "max", where + ".bounds"), where + ".bounds.max");
  const json& max_el = need(doc, "max_el", where);
  if (!max_el.is_number_integer()) throw ParseError(where + ".max_el: expected an integer");
  m.max_el = max_el.get<int>();
  m.min_cr = need_number(doc, "min_cr", where);
  try {
    m.validate();
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  return m;
}

MapSpec load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return map_from_json(doc);
}

std::string maps_directory() {
  if (const char* env = std::getenv("CSAOT_MAPS_DIR")) return env;
#ifdef CSAOT_MAPS_DIR
  return CSAOT_MAPS_DIR;
#else
  return "maps";
#endif
}

MapSpec load_map(const std::string& name_or_path) {
  for (const auto& n : builtin_map_names()) {
    if (n != name_or_path) continue;
    const auto file = std::filesystem::path(maps_directory()) / (n + ".json");
    if (std::filesystem::exists(file)) return load_map_file(file.string());
    return builtin_map(n);
  }
  if (std::filesystem::exists(name_or_path)) return load_map_file(name_or_path);
  throw InputError("unknown map '" + name_or_path + "'");
}

}  // namespace csaot::sim
