#pragma once

// Mixture of Policies: a softmax gate scores n Gaussian expert heads, the K
// most probable are kept, their probabilities renormalized, and their
// distribution parameters blended with those weights. Unselected experts are
// never evaluated, so they receive no gradient.

#include <cstddef>
#include <string>
#include <vector>

#include "csaot/nn/gaussian.hpp"
#include "csaot/nn/layers.hpp"

namespace csaot::mop {

using nn::Var;
using nn::Vector;

struct MopConfig {
  int experts = 4;
  int k = 2;
  std::size_t expert_hidden = 32;
  // Weight of the importance-balancing auxiliary loss; 0 disables it.
  double balance_coef = 0.0;

  void validate() const;
};

struct TopK {
  std::vector<std::size_t> indices;  // by descending probability
  Vector weights;                    // renormalized, same order
};

// Ties are broken toward the lowest index.
TopK select_top_k(const Vector& probs, int k);

struct Expert {
  nn::Mlp net;
  nn::ParamTensor log_std;
};

struct MopOutput {
  nn::GaussianHead head;
  Var probs;
  std::vector<std::size_t> selected;
  Vector weights;
};

class MoPNetwork {
 public:
  MoPNetwork() = default;
  MoPNetwork(const std::string& name, std::size_t in, std::size_t action_dim, const MopConfig& config);

  // Glorot weights, log_std = log(0.5).
  void init(nn::Rng& rng);
  Var gate_probs(const Var& encoded);
  MopOutput forward(const Var& encoded);
  // Mean and clamped log_std of one expert (used by tests and diagnostics).
  nn::GaussianHead expert_head(std::size_t i, const Var& encoded);
  void collect(std::vector<nn::ParamTensor*>& out);

  std::size_t action_dim() const { return action_dim_; }
  int k() const { return k_; }
  std::size_t expert_count() const { return experts_.size(); }
  nn::Linear& gate() { return gate_; }
  Expert& expert(std::size_t i) { return experts_[i]; }

 private:
  nn::Linear gate_;
  std::vector<Expert> experts_;
  std::size_t action_dim_ = 0;
  int k_ = 1;
};

// Squared coefficient of variation of summed gate probabilities over a batch.
Var balance_loss(const std::vector<Var>& probs);

}  // namespace csaot::mop
