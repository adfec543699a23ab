#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace csaot::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }

  static Vec2 from_angle(double a) { return {std::cos(a), std::sin(a)}; }
};

// Expresses `p` in the frame of a pose at `origin` with `heading`
// (x forward, y to the left).
Vec2 to_local(Vec2 p, Vec2 origin, double heading);
Vec2 to_world(Vec2 local, Vec2 origin, double heading);
double wrap_angle(double a);

struct Rect {
  Vec2 lo;
  Vec2 hi;

  bool contains(Vec2 p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }
  bool operator==(const Rect&) const = default;
};

class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Vec2> points);

  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  // Linear interpolation at arc length s, clamped to [0, length].
  Vec2 point_at(double s) const;
  // Direction of the segment containing arc length s.
  double heading_at(double s) const;
  // Back-and-forth traversal: arc position for an unbounded phase.
  double ping_pong(double phase) const;
  const std::vector<Vec2>& points() const { return points_; }

 private:
  std::size_t segment_at(double s) const;

  std::vector<Vec2> points_;
  std::vector<double> cumulative_;
};

// Moving obstacles follow `path` back and forth at `speed`.
struct Motion {
  std::vector<Vec2> path;
  double speed = 0.0;
  bool operator==(const Motion&) const = default;
};

struct Obstacle {
  enum class Kind { kCircle, kRect };

  Kind kind = Kind::kCircle;
  Vec2 center;
  double radius = 0.0;  // circles
  Vec2 half_extent;     // axis-aligned rectangles
  std::optional<Motion> motion;

  static Obstacle circle(Vec2 center, double radius);
  static Obstacle rect(Vec2 lo, Vec2 hi);

  Vec2 lo() const { return center - half_extent; }
  Vec2 hi() const { return center + half_extent; }
  bool contains(Vec2 p) const;
  // Euclidean distance from p to the obstacle (0 inside).
  double distance_to(Vec2 p) const;
  bool valid() const;
  bool operator==(const Obstacle&) const = default;
};

// Returned for rays whose origin lies inside an obstacle.
inline constexpr double kMinRange = 1e-6;

// Distance along a unit direction to the obstacle boundary; nullopt on miss.
std::optional<double> ray_hit(const Obstacle& obstacle, Vec2 origin, Vec2 direction);

// Distance to the first obstacle boundary along `direction` (radians), or
// d_max when nothing is hit closer. Result is in (0, d_max].
double raycast(Vec2 origin, double direction, std::span<const Obstacle> obstacles, double d_max);

}  // namespace csaot::sim
