#include "csaot/rewards/rewards.hpp"

#include <algorithm>
#include <cmath>

#include "csaot/errors.hpp"

namespace csaot::rewards {

void RewardWeights::validate() const {
  for (double v : {track, nav, diff, detect, obstacle, movement}) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("reward weights must be finite and non-negative");
  }
}

double tracking_reward(double box_area, double frame_area, double lambda) {
  if (!(frame_area > 0.0)) throw InputError("tracking_reward: frame area must be positive");
  if (!(box_area >= 0.0 && box_area <= frame_area)) throw InputError("tracking_reward: box area outside [0, frame]");
  const double ratio = box_area / (frame_area * 0.25);
  return std::min(ratio, 2.0 - ratio) * lambda;
}

double navigation_reward(const std::optional<BBox>& box, double frame_w, double frame_h, double lambda) {
  if (!box) return -lambda;
  const Vec2 c = box->center();
  const double cx = frame_w / 2.0, cy = frame_h / 2.0;
  const double dist = std::abs(c.x - cx) + std::abs(c.y - cy);
  return -dist / (cx + cy) * lambda;
}

BehaviouralRewards behavioural_rewards(double speed, double accel, double prev_accel, double steer,
                                       double lambda_diff, double standstill_penalty) {
  BehaviouralRewards r;
  const bool stopped = speed == 0.0;
  r.r_move = (stopped && accel <= 0.0) ? standstill_penalty : 0.0;
  r.r_steer = (stopped && steer != 0.0) ? standstill_penalty : 0.0;
  r.r_diff = std::abs(accel - prev_accel) * lambda_diff;
  return r;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::max(0.0, std::min(a.x_r, b.x_r) - std::max(a.x_l, b.x_l));
  const double iy = std::max(0.0, std::min(a.y_r, b.y_r) - std::max(a.y_l, b.y_l));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return a == b ? 1.0 : 0.0;
  return inter / uni;
}

double detection_reward(const std::optional<BBox>& truth, const BBox& predicted, double lambda) {
  if (!truth) return 0.0;
  return iou(*truth, predicted) * lambda;
}

double obstacle_reward(double predicted, double actual, double lambda) { return -std::abs(predicted - actual) * lambda; }

double movement_reward(Vec2 predicted_center, const std::optional<BBox>& truth, double frame_w, double frame_h,
                       double lambda) {
  if (!truth) return -lambda;
  const Vec2 c = truth->center();
  const double dist = std::abs(predicted_center.x - c.x) + std::abs(predicted_center.y - c.y);
  return -dist / (frame_w + frame_h) * lambda;
}

double compose_global(const RewardBreakdown& b, bool collided, double collision_penalty) {
  if (collided) return collision_penalty;
  return b.r_track + b.r_nav + b.r_move + b.r_steer - b.r_diff;
}

RewardBreakdown compute_rewards(const StepInputs& in, const RewardWeights& w, const sensing::CameraModel& cam) {
  RewardBreakdown b;
  const double area = in.result_box ? in.result_box->area() : 0.0;
  b.r_track = tracking_reward(area, cam.frame_area(), w.track);
  b.r_nav = navigation_reward(in.result_box, cam.frame_w, cam.frame_h, w.nav);
  const BehaviouralRewards beh =
      behavioural_rewards(in.speed_before, in.accel, in.prev_accel, in.steer, w.diff, w.standstill_penalty);
  b.r_move = beh.r_move;
  b.r_steer = beh.r_steer;
  b.r_diff = beh.r_diff;
  b.r_detect = detection_reward(in.observed_box, in.predicted_box, w.detect);
  b.r_obstacle = obstacle_reward(in.predicted_distance, in.observed_obstacle_distance, w.obstacle);
  b.r_movement = movement_reward(in.predicted_center, in.observed_box, cam.frame_w, cam.frame_h, w.movement);
  b.collision = in.collided;
  b.global = compose_global(b, in.collided, w.collision_penalty);
  return b;
}

}  // namespace csaot::rewards
