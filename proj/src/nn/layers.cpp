#include "csaot/nn/layers.hpp"

#include <cmath>

#include "csaot/errors.hpp"
#include "csaot/nn/ops.hpp"

namespace csaot::nn {

void glorot_uniform(ParamTensor& weight, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(weight.rows() + weight.cols()));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (double& v : weight.values) v = dist(rng);
}

Linear::Linear(const std::string& name, std::size_t in, std::size_t out)
    : weight(name + ".weight", {out, in}), bias(name + ".bias", {out}) {}

void Linear::init(Rng& rng) {
  glorot_uniform(weight, rng);
  std::fill(bias.values.begin(), bias.values.end(), 0.0);
}

Var Linear::forward(const Var& x) { return linear(weight, &bias, x); }

void Linear::collect(std::vector<ParamTensor*>& out) {
  out.push_back(&weight);
  out.push_back(&bias);
}

Mlp::Mlp(const std::string& name, const std::vector<std::size_t>& widths) {
  if (widths.size() < 2) throw InputError("Mlp " + name + ": needs input and output widths");
  for (std::size_t i = 0; i + 1 < widths.size(); ++i)
    layers_.emplace_back(name + "." + std::to_string(i), widths[i], widths[i + 1]);
}

void Mlp::init(Rng& rng) {
  for (auto& l : layers_) l.init(rng);
}

Var Mlp::forward(const Var& x) {
  if (x.size() != in())
    throw InputError("Mlp: input size " + std::to_string(x.size()) + ", expected " + std::to_string(in()));
  Var h = x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    h = layers_[i].forward(h);
    if (i + 1 < layers_.size()) h = tanh(h);
  }
  return h;
}

Vector Mlp::forward(const Vector& x) {
  Tape tape(Tape::Mode::kInference);
  return forward(tape.constant(x)).value();
}

void Mlp::collect(std::vector<ParamTensor*>& out) {
  for (auto& l : layers_) l.collect(out);
}

LstmCell::LstmCell(const std::string& name, std::size_t in, std::size_t width)
    : w_ih(name + ".w_ih", {4 * width, in}),
      w_hh(name + ".w_hh", {4 * width, width}),
      bias(name + ".bias", {4 * width}) {}

void LstmCell::init(Rng& rng) {
  glorot_uniform(w_ih, rng);
  glorot_uniform(w_hh, rng);
  const std::size_t h = width();
  for (std::size_t i = 0; i < bias.size(); ++i) bias.values[i] = (i >= h && i < 2 * h) ? 1.0 : 0.0;
}

LstmVars LstmCell::forward(const Var& x, const LstmVars& state) {
  const std::size_t h = width();
  if (x.size() != in())
    throw InputError("LstmCell: input size " + std::to_string(x.size()) + ", expected " + std::to_string(in()));
  if (state.hidden.size() != h || state.cell.size() != h)
    throw InputError("LstmCell: state size does not match width " + std::to_string(h));
  Var gates = add(linear(w_ih, &bias, x), linear(w_hh, nullptr, state.hidden));
  Var input_gate = sigmoid(slice(gates, 0, h));
  Var forget_gate = sigmoid(slice(gates, h, h));
  Var candidate = tanh(slice(gates, 2 * h, h));
  Var output_gate = sigmoid(slice(gates, 3 * h, h));
  Var cell = add(mul(forget_gate, state.cell), mul(input_gate, candidate));
  Var hidden = mul(output_gate, tanh(cell));
  return {hidden, cell};
}

LstmState LstmCell::step(const Vector& x, const LstmState& state) {
  Tape tape(Tape::Mode::kInference);
  LstmVars next = forward(tape.constant(x), {tape.constant(state.hidden), tape.constant(state.cell)});
  return {next.hidden.value(), next.cell.value()};
}

void LstmCell::collect(std::vector<ParamTensor*>& out) {
  out.push_back(&w_ih);
  out.push_back(&w_hh);
  out.push_back(&bias);
}

std::size_t parameter_count(const std::vector<ParamTensor*>& params) {
  std::size_t n = 0;
  for (const ParamTensor* p : params) n += p->size();
  return n;
}

void zero_grads(const std::vector<ParamTensor*>& params) {
  for (ParamTensor* p : params) p->zero_grad();
}

double clip_grad_norm(const std::vector<ParamTensor*>& params, double max_norm) {
  double sq = 0.0;
  for (const ParamTensor* p : params)
    for (double g : p->grad) sq += g * g;
  const double norm = std::sqrt(sq);
  if (!std::isfinite(norm)) throw NumericalError("clip_grad_norm: non-finite gradient norm");
  if (norm > max_norm) {
    const double s = max_norm / norm;
    for (ParamTensor* p : params)
      for (double& g : p->grad) g *= s;
  }
  return norm;
}

}  // namespace csaot::nn
