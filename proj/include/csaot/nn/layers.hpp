#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "csaot/nn/tape.hpp"

namespace csaot::nn {

using Rng = std::mt19937_64;

// Uniform in ±sqrt(6 / (fan_in + fan_out)).
void glorot_uniform(ParamTensor& weight, Rng& rng);

class Linear {
 public:
  Linear() = default;
  Linear(const std::string& name, std::size_t in, std::size_t out);

  void init(Rng& rng);
  Var forward(const Var& x);
  void collect(std::vector<ParamTensor*>& out);

  std::size_t in() const { return weight.cols(); }
  std::size_t out() const { return weight.rows(); }

  ParamTensor weight;
  ParamTensor bias;
};

// Affine layers with tanh between them and an identity output layer.
class Mlp {
 public:
  Mlp() = default;
  // widths = {input, hidden..., output}; needs at least two entries.
  Mlp(const std::string& name, const std::vector<std::size_t>& widths);

  void init(Rng& rng);
  Var forward(const Var& x);
  // Convenience for callers without a tape; records on a throwaway one.
  Vector forward(const Vector& x);
  void collect(std::vector<ParamTensor*>& out);

  std::size_t in() const { return layers_.front().in(); }
  std::size_t out() const { return layers_.back().out(); }
  std::vector<Linear>& layers() { return layers_; }
  const std::vector<Linear>& layers() const { return layers_; }

 private:
  std::vector<Linear> layers_;
};

struct LstmState {
  Vector hidden;
  Vector cell;

  static LstmState zeros(std::size_t width) { return {Vector(width, 0.0), Vector(width, 0.0)}; }
};

struct LstmVars {
  Var hidden;
  Var cell;
};

// Gate layout in the stacked [4H] rows: input, forget, candidate, output.
class LstmCell {
 public:
  LstmCell() = default;
  LstmCell(const std::string& name, std::size_t in, std::size_t width);

  // Glorot weights, zero bias except the forget gate at +1.
  void init(Rng& rng);
  LstmVars forward(const Var& x, const LstmVars& state);
  // One step without a caller tape; returns the new state (hidden = output).
  LstmState step(const Vector& x, const LstmState& state);
  void collect(std::vector<ParamTensor*>& out);

  std::size_t in() const { return w_ih.cols(); }
  std::size_t width() const { return w_hh.cols(); }

  ParamTensor w_ih;  // [4H, in]
  ParamTensor w_hh;  // [4H, H]
  ParamTensor bias;  // [4H]
};

std::size_t parameter_count(const std::vector<ParamTensor*>& params);
void zero_grads(const std::vector<ParamTensor*>& params);
// Scales all grads so their global L2 norm is at most max_norm; returns the
// norm before scaling.
double clip_grad_norm(const std::vector<ParamTensor*>& params, double max_norm);

}  // namespace csaot::nn
