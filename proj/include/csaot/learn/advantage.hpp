#pragma once

#include "csaot/nn/tape.hpp"

namespace csaot::learn {

using nn::Vector;

struct Advantages {
  Vector raw;         // GAE estimates before normalization
  Vector normalized;  // zero mean, unit variance; equals raw when length < 2
  Vector returns;     // raw + values
};

// Generalized advantage estimation with a zero bootstrap after the last step.
Advantages compute_advantages(const Vector& rewards, const Vector& values, double gae_lambda, double gamma = 1.0);

// (x - mean) / (std + 1e-8), population std. Inputs shorter than 2 pass through.
Vector normalize(const Vector& x);

}  // namespace csaot::learn
