#include "csaot/nn/adam.hpp"

#include <cmath>

#include "csaot/errors.hpp"

namespace csaot::nn {

Adam::Adam(AdamConfig config) : config_(config) { set_lr(config.lr); }

void Adam::set_lr(double lr) {
  if (!(lr > 0.0)) throw InputError("Adam: learning rate must be positive");
  config_.lr = lr;
}

void Adam::step(const std::vector<ParamTensor*>& params) {
  if (m_.empty()) {
    for (const ParamTensor* p : params) {
      m_.emplace_back(p->size(), 0.0);
      v_.emplace_back(p->size(), 0.0);
    }
  }
  if (m_.size() != params.size()) throw InputError("Adam: parameter list changed between steps");

  const std::int64_t t = steps_ + 1;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t));

  std::vector<Vector> m_next(params.size());
  std::vector<Vector> v_next(params.size());
  std::vector<Vector> updated(params.size());
  for (std::size_t k = 0; k < params.size(); ++k) {
    const ParamTensor& p = *params[k];
    if (p.size() != m_[k].size()) throw InputError("Adam: layout changed at " + p.name);
    m_next[k].resize(p.size());
    v_next[k].resize(p.size());
    updated[k] = p.values;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double g = p.grad[i];
      m_next[k][i] = config_.beta1 * m_[k][i] + (1.0 - config_.beta1) * g;
      v_next[k][i] = config_.beta2 * v_[k][i] + (1.0 - config_.beta2) * g * g;
      const double m_hat = m_next[k][i] / c1;
      const double v_hat = v_next[k][i] / c2;
      updated[k][i] -= config_.lr * m_hat / (std::sqrt(v_hat) + config_.eps);
      if (!std::isfinite(updated[k][i]))
        throw NumericalError("Adam: non-finite update for " + p.name + "[" + std::to_string(i) + "]");
    }
  }

  for (std::size_t k = 0; k < params.size(); ++k) {
    params[k]->values = std::move(updated[k]);
    params[k]->zero_grad();
  }
  m_ = std::move(m_next);
  v_ = std::move(v_next);
  steps_ = t;
}

}  // namespace csaot::nn
