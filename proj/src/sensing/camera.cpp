#include "csaot/sensing/camera.hpp"

#include <algorithm>
#include <cmath>

#include "csaot/errors.hpp"

namespace csaot::sensing {

namespace {
constexpr double kNearPlane = 0.1;
}

double CameraModel::focal_px() const { return frame_w / (2.0 * std::tan(hfov / 2.0)); }

void CameraModel::validate() const {
  if (!(frame_w > 0.0 && frame_h > 0.0)) throw InputError("camera: frame size must be positive");
  if (!(hfov > 0.0 && hfov < std::numbers::pi)) throw InputError("camera: hfov must lie in (0, pi)");
  if (!(d_max > 0.0)) throw InputError("camera: d_max must be positive");
  if (fov_rays < 1) throw InputError("camera: needs at least one range ray");
}

BBox BBox::clamped(double w, double h) const {
  return {std::clamp(x_l, 0.0, w), std::clamp(y_l, 0.0, h), std::clamp(x_r, 0.0, w), std::clamp(y_r, 0.0, h)};
}

double bearing_to(const sim::WorldState& state, sim::Vec2 p) {
  const sim::Vec2 local = sim::to_local(p, state.tracker_pos, state.tracker_heading);
  return std::atan2(-local.y, local.x);
}

BBox pinhole_box(double bearing, double distance, const CameraModel& cam) {
  const double d = std::max(distance, kNearPlane);
  const double f = cam.focal_px();
  const double u_c = cam.frame_w / 2.0 * (1.0 + std::tan(bearing) / std::tan(cam.hfov / 2.0));
  const double half_w = f * cam.target_width / d / 2.0;
  const double v_bottom = cam.frame_h / 2.0 + f * cam.cam_height / d;
  const double v_top = cam.frame_h / 2.0 - f * (cam.target_height - cam.cam_height) / d;
  return {u_c - half_w, v_top, u_c + half_w, v_bottom};
}

std::optional<BBox> project_bbox(const sim::WorldState& state, const CameraModel& cam) {
  const sim::Vec2 rel = state.target_pos - state.tracker_pos;
  const double distance = rel.norm();
  const double bearing = bearing_to(state, state.target_pos);
  if (std::abs(bearing) > cam.hfov / 2.0 || distance > cam.d_max) return std::nullopt;
  if (distance > 0.0) {
    const double hit = sim::raycast(state.tracker_pos, std::atan2(rel.y, rel.x), state.obstacles, distance);
    if (hit < distance) return std::nullopt;
  }
  return pinhole_box(bearing, distance, cam).clamped(cam.frame_w, cam.frame_h);
}

double nearest_obstacle_distance(const sim::WorldState& state, const CameraModel& cam) {
  double best = cam.d_max;
  const int n = cam.fov_rays;
  for (int k = 0; k < n; ++k) {
    const double offset = n == 1 ? 0.0 : -cam.hfov / 2.0 + cam.hfov * k / (n - 1);
    best = std::min(best, sim::raycast(state.tracker_pos, state.tracker_heading - offset, state.obstacles, cam.d_max));
  }
  return best;
}

}  // namespace csaot::sensing
