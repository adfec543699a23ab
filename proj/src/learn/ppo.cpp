#include "csaot/learn/ppo.hpp"

#include "csaot/errors.hpp"
#include "csaot/nn/ops.hpp"

namespace csaot::learn {

PpoTerms ppo_loss(const Var& log_probs, const Var& values, const Var& entropies, const Vector& old_log_probs,
                  const Vector& advantages, const Vector& returns, const std::vector<bool>& exploratory,
                  const PpoConfig& config) {
  const std::size_t n = log_probs.size();
  if (n == 0) throw InputError("ppo_loss: empty batch");
  if (values.size() != n || entropies.size() != n || old_log_probs.size() != n || advantages.size() != n ||
      returns.size() != n || exploratory.size() != n)
    throw InputError("ppo_loss: batch fields differ in length");
  if (!(config.clip > 0.0)) throw InputError("ppo_loss: clip must be positive");

  nn::Tape& tape = log_probs.tape();
  PpoTerms out;
  out.value = nn::mean(nn::square(nn::sub(values, tape.constant(returns))));
  out.entropy = nn::mean(entropies);
  Var loss = nn::sub(nn::scale(out.value, config.value_coef), nn::scale(out.entropy, config.entropy_coef));

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!exploratory[i]) keep.push_back(i);
  if (!keep.empty()) {
    Vector old_lp, adv;
    for (std::size_t i : keep) {
      old_lp.push_back(old_log_probs[i]);
      adv.push_back(advantages[i]);
    }
    Var a = tape.constant(adv);
    Var ratio = nn::exp(nn::sub(nn::gather(log_probs, keep), tape.constant(old_lp)));
    Var unclipped = nn::mul(ratio, a);
    Var clipped = nn::mul(nn::clamp(ratio, 1.0 - config.clip, 1.0 + config.clip), a);
    out.policy = nn::neg(nn::mean(nn::minimum(unclipped, clipped)));
    loss = nn::add(out.policy, loss);
  }
  out.loss = loss;
  return out;
}

}  // namespace csaot::learn
