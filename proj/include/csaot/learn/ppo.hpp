#pragma once

#include <vector>

#include "csaot/nn/tape.hpp"

namespace csaot::learn {

using nn::Var;
using nn::Vector;

struct PpoConfig {
  double clip = 0.2;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
};

struct PpoTerms {
  Var loss;
  Var policy;  // invalid when every step was exploratory
  Var value;
  Var entropy;
};

// Clipped surrogate over the non-exploratory steps, plus value regression
// and an entropy bonus over all steps. log_probs, values and entropies are
// per-step nodes of the current policy, one entry per step.
PpoTerms ppo_loss(const Var& log_probs, const Var& values, const Var& entropies, const Vector& old_log_probs,
                  const Vector& advantages, const Vector& returns, const std::vector<bool>& exploratory,
                  const PpoConfig& config);

}  // namespace csaot::learn
