#include "csaot/learn/advantage.hpp"

#include <cmath>

#include "csaot/errors.hpp"

namespace csaot::learn {

Advantages compute_advantages(const Vector& rewards, const Vector& values, double gae_lambda, double gamma) {
  if (rewards.size() != values.size()) throw InputError("compute_advantages: rewards and values differ in length");
  if (!(gae_lambda >= 0.0 && gae_lambda <= 1.0)) throw InputError("compute_advantages: gae_lambda must lie in [0, 1]");
  const std::size_t n = rewards.size();
  Advantages out;
  out.raw.assign(n, 0.0);
  double running = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double next_value = i + 1 < n ? values[i + 1] : 0.0;
    const double delta = rewards[i] + gamma * next_value - values[i];
    running = delta + gamma * gae_lambda * running;
    out.raw[i] = running;
  }
  out.returns.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.returns[i] = out.raw[i] + values[i];
  out.normalized = normalize(out.raw);
  return out;
}

Vector normalize(const Vector& x) {
  if (x.size() < 2) return x;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(x.size()));
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / (sd + 1e-8);
  return out;
}

}  // namespace csaot::learn
