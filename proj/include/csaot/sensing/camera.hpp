#pragma once

#include <numbers>
#include <optional>

#include "csaot/sim/world.hpp"

namespace csaot::sensing {

struct CameraModel {
  double frame_w = 128.0;  // px
  double frame_h = 96.0;   // px
  double hfov = std::numbers::pi / 2.0;
  double cam_height = 1.0;  // m
  double target_width = 1.0;
  double target_height = 1.5;
  double d_max = 20.0;  // sensing range, m
  int fov_rays = 31;

  double focal_px() const;
  double frame_area() const { return frame_w * frame_h; }
  void validate() const;
};

// Corners in pixels: (x_l, y_l) top-left, (x_r, y_r) bottom-right.
struct BBox {
  double x_l = 0.0;
  double y_l = 0.0;
  double x_r = 0.0;
  double y_r = 0.0;

  double area() const { return (x_r - x_l) * (y_r - y_l); }
  sim::Vec2 center() const { return {(x_l + x_r) / 2.0, (y_l + y_r) / 2.0}; }
  BBox clamped(double w, double h) const;
  bool operator==(const BBox&) const = default;
};

// Bearing of `p` from the tracker pose, positive to the right of the heading.
double bearing_to(const sim::WorldState& state, sim::Vec2 p);

// Pinhole box for a target at `bearing` and `distance`, before clamping.
BBox pinhole_box(double bearing, double distance, const CameraModel& cam);

// Ground-truth box of the target in the current frame; nullopt when it is
// outside the field of view, beyond d_max, or occluded along the
// center-to-center ray.
std::optional<BBox> project_bbox(const sim::WorldState& state, const CameraModel& cam);

// Minimum range over cam.fov_rays rays spanning the field of view.
double nearest_obstacle_distance(const sim::WorldState& state, const CameraModel& cam);

}  // namespace csaot::sensing
