#pragma once

#include <optional>

#include "csaot/sensing/camera.hpp"

namespace csaot::rewards {

using sensing::BBox;
using sim::Vec2;

struct RewardWeights {
  double track = 1.0;
  double nav = 1.0;
  double diff = 0.5;
  double detect = 1.0;
  double obstacle = 0.1;  // per meter
  double movement = 1.0;
  double collision_penalty = -50.0;
  double standstill_penalty = -3.0;

  void validate() const;
};

struct RewardBreakdown {
  double r_track = 0.0;
  double r_nav = 0.0;
  double r_move = 0.0;
  double r_steer = 0.0;
  double r_diff = 0.0;  // magnitude; subtracted in the global sum
  double r_detect = 0.0;
  double r_obstacle = 0.0;
  double r_movement = 0.0;
  bool collision = false;
  double global = 0.0;
};

// Peaks at lambda when the box covers a quarter of the frame; -2 lambda at full frame.
double tracking_reward(double box_area, double frame_area, double lambda);

// Normalized Manhattan offset of the box center from the frame center, negated.
// An invisible target scores the worst case, -lambda.
double navigation_reward(const std::optional<BBox>& box, double frame_w, double frame_h, double lambda);

struct BehaviouralRewards {
  double r_move = 0.0;
  double r_steer = 0.0;
  double r_diff = 0.0;
};

BehaviouralRewards behavioural_rewards(double speed, double accel, double prev_accel, double steer,
                                       double lambda_diff, double standstill_penalty = -3.0);

double iou(const BBox& a, const BBox& b);
// IoU against the true box; 0 when the target is not visible.
double detection_reward(const std::optional<BBox>& truth, const BBox& predicted, double lambda);
// -|predicted - actual| * lambda.
double obstacle_reward(double predicted, double actual, double lambda);
// Manhattan error of the predicted center normalized by the frame's
// Manhattan extent, negated; worst case -lambda when the target is not visible.
double movement_reward(Vec2 predicted_center, const std::optional<BBox>& truth, double frame_w, double frame_h,
                       double lambda);

double compose_global(const RewardBreakdown& b, bool collided, double collision_penalty = -50.0);

// Everything needed for one step's rewards. First-layer rewards are scored
// against the state the agents observed; tracking and navigation against the
// state reached after the navigation action.
struct StepInputs {
  std::optional<BBox> observed_box;
  std::optional<BBox> result_box;
  double observed_obstacle_distance = 0.0;
  double speed_before = 0.0;
  double accel = 0.0;
  double prev_accel = 0.0;
  double steer = 0.0;
  BBox predicted_box;        // pixels
  Vec2 predicted_center;     // pixels
  double predicted_distance = 0.0;  // meters
  bool collided = false;
};

RewardBreakdown compute_rewards(const StepInputs& in, const RewardWeights& w, const sensing::CameraModel& cam);

}  // namespace csaot::rewards
