#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "csaot/errors.hpp"
#include "csaot/sim/maps.hpp"
#include "csaot/sim/world.hpp"

using namespace csaot;
using namespace csaot::sim;

namespace {

MapSpec line_map() {
  MapSpec m;
  m.name = "line";
  m.waypoints = {{0, 0}, {10, 0}};
  m.spawn = {{-6, 0}, 0.0, 6.0};
  m.bounds = {{-20, -20}, {20, 20}};
  m.max_el = 10;
  return m;
}

VehicleParams no_jitter() {
  VehicleParams p;
  p.spawn_lateral_jitter = 0;
  p.spawn_heading_jitter = 0;
  return p;
}

}  // namespace

TEST_CASE("kinematics examples") {
  const World w(line_map(), no_jitter());
  WorldState s = w.reset(1);
  CHECK(s.tracker_pos == Vec2{-6, 0});
  CHECK(s.tracker_speed == 0.0);

  const WorldState a = w.step(s, {0.5, 0.0}, 0.1);
  CHECK(a.tracker_speed == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a.tracker_heading == s.tracker_heading);
  CHECK(a.step_index == 1);
  CHECK(a.last_accel == 5.0);

  s.tracker_speed = 5.0;
  CHECK(w.step(s, {0.5, 0.0}).tracker_speed == 5.0);
  s.tracker_speed = 0.2;
  CHECK(w.step(s, {-0.5, 0.0}).tracker_speed == 0.0);
}

TEST_CASE("bicycle update follows the formula") {
  const World w(line_map(), no_jitter());
  WorldState s = w.reset(0);
  s.tracker_speed = 2.0;
  s.tracker_heading = 0.3;
  const WorldState n = w.step(s, {0.1, 0.2}, 0.1);
  const double v = 2.0 + 0.1 * 0.1 * 10;
  const double h = 0.3 + v / 2.0 * std::tan(0.2) * 0.1;
  CHECK(n.tracker_speed == doctest::Approx(v));
  CHECK(n.tracker_heading == doctest::Approx(h));
  CHECK(n.tracker_pos.x == doctest::Approx(-6 + std::cos(h) * v * 0.1));
  CHECK(n.tracker_pos.y == doctest::Approx(std::sin(h) * v * 0.1));
  CHECK(n.tracker_heading > s.tracker_heading);
}

TEST_CASE("step rejects inadmissible actions") {
  const World w(line_map(), no_jitter());
  const WorldState s = w.reset(0);
  CHECK_THROWS_AS(w.step(s, {0.6, 0}), InputError);
  CHECK_THROWS_AS(w.step(s, {0, -0.51}), InputError);
  CHECK_THROWS_AS(w.step(s, {0, 0}, 0.0), InputError);
  CHECK_THROWS_AS(w.step(s, {std::nan(""), 0}), InputError);
}

TEST_CASE("advance target examples") {
  const World w(line_map(), no_jitter());
  const TargetAdvance a = w.advance_target(0.0, 0.1);
  CHECK(a.progress == doctest::Approx(0.2));
  CHECK(a.position.x == doctest::Approx(0.2));
  CHECK(a.position.y == 0.0);
  CHECK_FALSE(a.complete);
  const TargetAdvance z = w.advance_target(3.0, 0.0);
  CHECK(z.progress == 3.0);
  CHECK(z.position == Vec2{3, 0});
  const TargetAdvance end = w.advance_target(10.0, 0.1);
  CHECK(end.complete);
  CHECK(end.progress == 10.0);
}

TEST_CASE("collision examples") {
  const std::vector<Obstacle> obs{Obstacle::circle({1.7, 0}, 1.0)};
  const Rect bounds{{-50, -50}, {50, 50}};
  CHECK(disc_collides({1.7, 0}, 0.8, obs, bounds));
  CHECK(disc_collides({0, 0}, 0.8, obs, bounds));
  CHECK_FALSE(disc_collides({-8.3, 0}, 0.8, obs, bounds));
  CHECK_FALSE(disc_collides({-0.1, 0}, 0.8, obs, bounds));
  CHECK(disc_collides({49.5, 0}, 0.8, {}, bounds));
  CHECK(disc_collides({5, 5}, 0.8, {Obstacle::rect({4, 4}, {6, 6})}, bounds));
  CHECK_FALSE(disc_collides({3, 5}, 0.8, {Obstacle::rect({4, 4}, {6, 6})}, bounds));
}

TEST_CASE("collision is invariant under translating everything") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 500; ++i) {
    std::vector<Obstacle> obs{Obstacle::circle({u(rng), u(rng)}, 1 + std::abs(u(rng)) / 5),
                              Obstacle::rect({u(rng), u(rng)}, {u(rng) + 12, u(rng) + 12})};
    const Rect b{{-15, -15}, {15, 15}};
    const Vec2 p{u(rng), u(rng)};
    const Vec2 off{std::round(u(rng)) * 8, std::round(u(rng)) * 8};
    std::vector<Obstacle> moved = obs;
    for (auto& o : moved) o.center = o.center + off;
    CHECK(disc_collides(p, 0.8, obs, b) == disc_collides(p + off, 0.8, moved, {b.lo + off, b.hi + off}));
  }
}

TEST_CASE("raycast examples") {
  CHECK(raycast({0, 0}, 0.0, {}, 20.0) == 20.0);
  const std::vector<Obstacle> obs{Obstacle::circle({10, 0}, 1.0)};
  CHECK(raycast({0, 0}, 0.0, obs, 20.0) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(raycast({0, 0}, std::numbers::pi, obs, 20.0) == 20.0);
  const std::vector<Obstacle> box{Obstacle::rect({5, -1}, {7, 1})};
  CHECK(raycast({0, 0}, 0.0, box, 20.0) == doctest::Approx(5.0));
  CHECK(raycast({6, 0}, 0.0, box, 20.0) == kMinRange);
  CHECK_THROWS_AS(raycast({0, 0}, 0.0, obs, 0.0), InputError);
}

TEST_CASE("raycast range and monotonicity") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-15, 15), ang(-4, 4), rad(0.2, 3);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 c{u(rng), u(rng)};
    const double r = rad(rng);
    const Vec2 o{u(rng), u(rng)};
    const double dir = ang(rng);
    const std::vector<Obstacle> big{Obstacle::circle(c, r)}, small{Obstacle::circle(c, r * 0.7)};
    const double d = raycast(o, dir, big, 20.0);
    CHECK(d > 0.0);
    CHECK(d <= 20.0);
    CHECK(raycast(o, dir, small, 20.0) >= d);
  }
}

TEST_CASE("world stepping is deterministic and keeps bounds") {
  const World w(builtin_map("Complex"), VehicleParams{});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<NavAction> actions;
  for (int i = 0; i < 300; ++i) actions.push_back({u(rng), u(rng)});
  auto run = [&] {
    std::vector<WorldState> out{w.reset(77)};
    for (const auto& a : actions) out.push_back(w.step(out.back(), a));
    return out;
  };
  const auto a = run(), b = run();
  const double len = w.target_path().length();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].tracker_pos == b[i].tracker_pos);
    CHECK(a[i].tracker_heading == b[i].tracker_heading);
    CHECK(a[i].obstacles == b[i].obstacles);
    CHECK(a[i].tracker_speed >= 0.0);
    CHECK(a[i].tracker_speed <= 5.0);
    CHECK(a[i].target_path_progress >= 0.0);
    CHECK(a[i].target_path_progress <= len);
    CHECK(a[i].step_index == static_cast<std::int64_t>(i));
  }
}

TEST_CASE("spawn jitter is seeded") {
  const World w(builtin_map("SingleTurn"), VehicleParams{});
  CHECK(w.reset(3).tracker_pos == w.reset(3).tracker_pos);
  CHECK_FALSE(w.reset(3).tracker_pos == w.reset(4).tracker_pos);
  const WorldState s = w.reset(9);
  CHECK(std::abs(s.tracker_pos.y) <= 0.5);
  CHECK(std::abs(s.tracker_heading) <= 0.05);
}

TEST_CASE("dynamic obstacles move and stay on their paths") {
  const MapSpec m = builtin_map("Complex");
  const World w(m, VehicleParams{});
  WorldState s = w.reset(1);
  std::vector<Vec2> start;
  for (auto& o : s.obstacles) start.push_back(o.center);
  for (int i = 0; i < 50; ++i) s = w.step(s, {0, 0});
  int moved = 0;
  for (std::size_t i = 0; i < m.obstacles.size(); ++i) {
    if (m.obstacles[i].motion) {
      moved += !(s.obstacles[i].center == start[i]);
      const auto& p = m.obstacles[i].motion->path;
      CHECK(s.obstacles[i].center.x >= std::min(p[0].x, p[1].x) - 1e-9);
      CHECK(s.obstacles[i].center.x <= std::max(p[0].x, p[1].x) + 1e-9);
    } else {
      CHECK(s.obstacles[i].center == start[i]);
    }
  }
  CHECK(moved == 2);
}

TEST_CASE("built-in maps") {
  CHECK(builtin_map_names() == std::vector<std::string>{"SingleTurn", "SimpleLoop", "SharpLoop", "Complex"});
  const std::vector<int> caps{15, 25, 45, 80};
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const MapSpec m = builtin_map(builtin_map_names()[i]);
    CHECK(m.max_el == caps[i]);
    CHECK(m.min_cr == -150.0);
    CHECK_NOTHROW(m.validate());
    CHECK(map_from_json(nlohmann::json::parse(map_to_json(m).dump())) == m);
  }
  const MapSpec st = builtin_map("SingleTurn");
  CHECK(Polyline(st.waypoints).length() == doctest::Approx(50.0));
  CHECK(builtin_map("Complex").obstacles.size() == 8);
  CHECK(Polyline(builtin_map("Complex").waypoints).length() == doctest::Approx(120.0).epsilon(0.05));
  CHECK_THROWS_AS(builtin_map("Nowhere"), InputError);
}

TEST_CASE("shipped map files equal the built-in definitions") {
  for (const auto& name : builtin_map_names()) {
    const std::string path = maps_directory() + "/" + name + ".json";
    REQUIRE(std::filesystem::exists(path));
    CHECK(load_map_file(path) == builtin_map(name));
    CHECK(load_map(name) == builtin_map(name));
  }
}

TEST_CASE("map parse errors name the field") {
  auto doc = map_to_json(builtin_map("SharpLoop"));
  doc.erase("bounds");
  try {
    map_from_json(doc);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bounds") != std::string::npos);
  }
}
