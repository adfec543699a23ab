#include "csaot/nn/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "csaot/errors.hpp"
#include "csaot/nn/ops.hpp"

namespace csaot::nn {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

double log_one_minus_tanh_sq(double u) { return 2.0 * (std::numbers::ln2 - u - softplus(-2.0 * u)); }

Var gaussian_log_prob(const GaussianHead& head, const Vector& raw) {
  const Vector& mu = head.mean.value();
  const Vector& ls = head.log_std.value();
  if (mu.size() != raw.size() || ls.size() != raw.size())
    throw InputError("gaussian_log_prob: dimension mismatch");
  if (&head.mean.tape() != &head.log_std.tape()) throw InputError("gaussian_log_prob: mixed tapes");
  const double lp = gaussian_log_prob(mu, ls, raw);
  const int im = head.mean.id(), is = head.log_std.id();
  const bool needs = head.mean.requires_grad() || head.log_std.requires_grad();
  return head.mean.tape().record("gaussian_log_prob", Vector{lp}, needs, [im, is, raw](Tape& tp, int self) {
    const double g = tp.grad(self)[0];
    const Vector& m = tp.value(im);
    const Vector& s = tp.value(is);
    for (std::size_t d = 0; d < raw.size(); ++d) {
      const double sigma = std::exp(s[d]);
      const double z = (raw[d] - m[d]) / sigma;
      if (tp.requires_grad(im)) tp.grad(im)[d] += g * z / sigma;
      if (tp.requires_grad(is)) tp.grad(is)[d] += g * (z * z - 1.0);
    }
  });
}

double gaussian_log_prob(const Vector& mean, const Vector& log_std, const Vector& raw) {
  double lp = 0.0;
  for (std::size_t d = 0; d < raw.size(); ++d) {
    const double z = (raw[d] - mean[d]) / std::exp(log_std[d]);
    lp += -0.5 * z * z - log_std[d] - kHalfLog2Pi - log_one_minus_tanh_sq(raw[d]);
  }
  return lp;
}

Var gaussian_entropy(const Var& log_std) {
  const double per_dim = 0.5 + kHalfLog2Pi;
  return shift(sum(log_std), per_dim * static_cast<double>(log_std.size()));
}

Vector sample_raw(const Vector& mean, const Vector& log_std, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector raw(mean.size());
  for (std::size_t d = 0; d < mean.size(); ++d) raw[d] = mean[d] + std::exp(log_std[d]) * normal(rng);
  return raw;
}

}  // namespace csaot::nn
