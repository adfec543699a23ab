#include "csaot/mop/mop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csaot/errors.hpp"
#include "csaot/nn/ops.hpp"

namespace csaot::mop {

void MopConfig::validate() const {
  if (experts < 1) throw InputError("MoP: need at least one expert");
  if (k < 1 || k > experts) throw InputError("MoP: K must lie in [1, n]");
  if (expert_hidden == 0) throw InputError("MoP: expert hidden width must be positive");
  if (!(balance_coef >= 0.0)) throw InputError("MoP: balance coefficient must be non-negative");
}

TopK select_top_k(const Vector& probs, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > probs.size()) throw InputError("select_top_k: K must lie in [1, n]");
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  TopK out;
  out.indices.assign(order.begin(), order.begin() + k);
  double total = 0.0;
  for (std::size_t i : out.indices) total += probs[i];
  for (std::size_t i : out.indices) out.weights.push_back(probs[i] / total);
  return out;
}

MoPNetwork::MoPNetwork(const std::string& name, std::size_t in, std::size_t action_dim, const MopConfig& config)
    : gate_(name + ".gate", in, static_cast<std::size_t>(config.experts)), action_dim_(action_dim), k_(config.k) {
  config.validate();
  for (int i = 0; i < config.experts; ++i) {
    const std::string en = name + ".expert" + std::to_string(i);
    experts_.push_back({nn::Mlp(en, {in, config.expert_hidden, action_dim}), nn::ParamTensor(en + ".log_std", {action_dim})});
  }
}

void MoPNetwork::init(nn::Rng& rng) {
  gate_.init(rng);
  for (auto& e : experts_) {
    e.net.init(rng);
    std::fill(e.log_std.values.begin(), e.log_std.values.end(), std::log(0.5));
  }
}

Var MoPNetwork::gate_probs(const Var& encoded) { return nn::softmax(gate_.forward(encoded)); }

nn::GaussianHead MoPNetwork::expert_head(std::size_t i, const Var& encoded) {
  Expert& e = experts_.at(i);
  Var mean = e.net.forward(encoded);
  Var log_std = nn::clamp(encoded.tape().param(e.log_std), nn::kLogStdMin, nn::kLogStdMax);
  return {mean, log_std};
}

MopOutput MoPNetwork::forward(const Var& encoded) {
  MopOutput out;
  out.probs = gate_probs(encoded);
  const TopK top = select_top_k(out.probs.value(), k_);
  out.selected = top.indices;

  Var chosen = nn::gather(out.probs, top.indices);
  Var weights = nn::div_scalar(chosen, nn::sum(chosen));
  out.weights = weights.value();

  Var mean, log_std;
  for (std::size_t j = 0; j < top.indices.size(); ++j) {
    const nn::GaussianHead h = expert_head(top.indices[j], encoded);
    Var w = nn::slice(weights, j, 1);
    Var m = nn::mul_scalar(h.mean, w);
    Var s = nn::mul_scalar(h.log_std, w);
    mean = j == 0 ? m : nn::add(mean, m);
    log_std = j == 0 ? s : nn::add(log_std, s);
  }
  out.head = {mean, log_std};
  return out;
}

void MoPNetwork::collect(std::vector<nn::ParamTensor*>& out) {
  gate_.collect(out);
  for (auto& e : experts_) {
    e.net.collect(out);
    out.push_back(&e.log_std);
  }
}

Var balance_loss(const std::vector<Var>& probs) {
  if (probs.empty()) throw InputError("balance_loss: empty batch");
  Var importance = probs.front();
  for (std::size_t t = 1; t < probs.size(); ++t) importance = nn::add(importance, probs[t]);
  nn::Tape& tape = importance.tape();
  Var mu = nn::mean(importance);
  Var centered = nn::sub(importance, nn::mul_scalar(tape.constant(Vector(importance.size(), 1.0)), mu));
  Var var = nn::mean(nn::square(centered));
  return nn::div(var, nn::square(mu));
}

}  // namespace csaot::mop
