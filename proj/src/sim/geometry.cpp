#include "csaot/sim/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "csaot/errors.hpp"

namespace csaot::sim {

Vec2 to_local(Vec2 p, Vec2 origin, double heading) {
  const Vec2 d = p - origin;
  const double c = std::cos(heading), s = std::sin(heading);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Vec2 to_world(Vec2 local, Vec2 origin, double heading) {
  const double c = std::cos(heading), s = std::sin(heading);
  return {origin.x + c * local.x - s * local.y, origin.y + s * local.x + c * local.y};
}

double wrap_angle(double a) {
  if (a >= -std::numbers::pi && a <= std::numbers::pi) return a;
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a + std::numbers::pi, two_pi);
  if (a < 0.0) a += two_pi;
  return a - std::numbers::pi;
}

Polyline::Polyline(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InputError("Polyline: needs at least two points");
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i)
    cumulative_.push_back(cumulative_.back() + (points_[i] - points_[i - 1]).norm());
}

std::size_t Polyline::segment_at(double s) const {
  // Index i such that s lies on [cumulative_[i], cumulative_[i+1]].
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t i = it == cumulative_.begin() ? 0 : static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  return std::min(i, points_.size() - 2);
}

Vec2 Polyline::point_at(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_at(s);
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double f = seg > 0.0 ? (s - cumulative_[i]) / seg : 0.0;
  return points_[i] + (points_[i + 1] - points_[i]) * f;
}

double Polyline::heading_at(double s) const {
  const std::size_t i = segment_at(std::clamp(s, 0.0, length()));
  const Vec2 d = points_[i + 1] - points_[i];
  return std::atan2(d.y, d.x);
}

double Polyline::ping_pong(double phase) const {
  const double len = length();
  if (len <= 0.0) return 0.0;
  double s = std::fmod(phase, 2.0 * len);
  if (s < 0.0) s += 2.0 * len;
  return s > len ? 2.0 * len - s : s;
}

Obstacle Obstacle::circle(Vec2 center, double radius) {
  Obstacle o;
  o.kind = Kind::kCircle;
  o.center = center;
  o.radius = radius;
  return o;
}

Obstacle Obstacle::rect(Vec2 lo, Vec2 hi) {
  Obstacle o;
  o.kind = Kind::kRect;
  o.center = (lo + hi) * 0.5;
  o.half_extent = (hi - lo) * 0.5;
  return o;
}

bool Obstacle::contains(Vec2 p) const {
  if (kind == Kind::kCircle) return (p - center).norm() < radius;
  const Vec2 d = p - center;
  return std::abs(d.x) < half_extent.x && std::abs(d.y) < half_extent.y;
}

double Obstacle::distance_to(Vec2 p) const {
  if (kind == Kind::kCircle) return std::max(0.0, (p - center).norm() - radius);
  const double dx = std::max(0.0, std::abs(p.x - center.x) - half_extent.x);
  const double dy = std::max(0.0, std::abs(p.y - center.y) - half_extent.y);
  return std::hypot(dx, dy);
}

bool Obstacle::valid() const {
  if (kind == Kind::kCircle) return radius > 0.0;
  return half_extent.x > 0.0 && half_extent.y > 0.0;
}

std::optional<double> ray_hit(const Obstacle& obstacle, Vec2 origin, Vec2 direction) {
  if (obstacle.contains(origin)) return kMinRange;

  if (obstacle.kind == Obstacle::Kind::kCircle) {
    const Vec2 oc = origin - obstacle.center;
    const double b = direction.dot(oc);
    const double c = oc.dot(oc) - obstacle.radius * obstacle.radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    const double t = -b - std::sqrt(disc);
    if (t <= 0.0) return std::nullopt;
    return t;
  }

  // Slab method.
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  const double o[2] = {origin.x, origin.y};
  const double d[2] = {direction.x, direction.y};
  const Vec2 lo = obstacle.lo(), hi = obstacle.hi();
  const double lo_a[2] = {lo.x, lo.y};
  const double hi_a[2] = {hi.x, hi.y};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (o[axis] < lo_a[axis] || o[axis] > hi_a[axis]) return std::nullopt;
      continue;
    }
    double t1 = (lo_a[axis] - o[axis]) / d[axis];
    double t2 = (hi_a[axis] - o[axis]) / d[axis];
    if (t1 > t2) std::swap(t1, t2);
    t_near = std::max(t_near, t1);
    t_far = std::min(t_far, t2);
  }
  if (t_near > t_far || t_near <= 0.0) return std::nullopt;
  return t_near;
}

double raycast(Vec2 origin, double direction, std::span<const Obstacle> obstacles, double d_max) {
  if (!(d_max > 0.0)) throw InputError("raycast: d_max must be positive");
  const Vec2 dir = Vec2::from_angle(direction);
  double best = d_max;
  for (const Obstacle& ob : obstacles) {
    if (auto t = ray_hit(ob, origin, dir)) best = std::min(best, *t);
  }
  return best;
}

}  // namespace csaot::sim
