#pragma once

// Diagonal Gaussian over pre-squash actions u; the emitted action is tanh(u).
// Log-densities are those of the squashed action, i.e. they include the
// -sum log(1 - tanh(u)^2) change-of-variables term.

#include <random>

#include "csaot/nn/tape.hpp"

namespace csaot::nn {

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 2.0;

struct GaussianHead {
  Var mean;     // pre-squash
  Var log_std;  // already clamped to [kLogStdMin, kLogStdMax]
};

// log(1 - tanh(u)^2), stable for large |u|.
double log_one_minus_tanh_sq(double u);

// Density of tanh(raw) under the head; differentiable in mean and log_std.
Var gaussian_log_prob(const GaussianHead& head, const Vector& raw);
// Same quantity on plain values.
double gaussian_log_prob(const Vector& mean, const Vector& log_std, const Vector& raw);
// Entropy of the pre-squash Gaussian: sum(log_std) + d/2 (1 + log 2π).
Var gaussian_entropy(const Var& log_std);

Vector sample_raw(const Vector& mean, const Vector& log_std, std::mt19937_64& rng);

}  // namespace csaot::nn
