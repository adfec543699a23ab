#include "csaot/nn/tape.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csaot/errors.hpp"

namespace csaot::nn {

std::size_t shape_size(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

ParamTensor::ParamTensor(std::string name_in, std::vector<std::size_t> shape_in)
    : name(std::move(name_in)), shape(std::move(shape_in)) {
  values.assign(shape_size(shape), 0.0);
  grad.assign(values.size(), 0.0);
}

void ParamTensor::zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }

void ParamTensor::check_finite() const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw NumericalError(name + ": non-finite value at index " + std::to_string(i));
    if (!std::isfinite(grad[i]))
      throw NumericalError(name + ": non-finite gradient at index " + std::to_string(i));
  }
}

std::size_t Var::size() const { return tape_->value(id_).size(); }
const Vector& Var::value() const { return tape_->value(id_); }
bool Var::requires_grad() const { return tape_->requires_grad(id_); }

double Var::scalar() const {
  const Vector& v = value();
  if (v.size() != 1) throw InputError("scalar() on a node of size " + std::to_string(v.size()));
  return v[0];
}

Var Tape::constant(Vector value) { return record("constant", std::move(value), false, nullptr); }

Var Tape::param(ParamTensor& p) {
  ParamTensor* target = &p;
  return record("param", p.values, true, [target](Tape& t, int self) {
    const Vector& g = t.grad(self);
    for (std::size_t i = 0; i < g.size(); ++i) target->grad[i] += g[i];
  });
}

Var Tape::record(const char* op, Vector value, bool requires_grad, Backward fn) {
  Node node;
  node.op = op;
  node.value = std::move(value);
  node.requires_grad = requires_grad && recording();
  if (node.requires_grad) {
    node.grad.assign(node.value.size(), 0.0);
    node.backward = std::move(fn);
  }
  nodes_.push_back(std::move(node));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

void Tape::backward(const Var& loss) {
  if (loss.tape_ != this) throw InputError("backward: loss belongs to another tape");
  Node& root = nodes_[loss.id()];
  if (root.value.size() != 1)
    throw InputError("backward: loss must be scalar, got size " + std::to_string(root.value.size()));
  if (!std::isfinite(root.value[0])) {
    // Name the earliest node that went non-finite, not just the loss.
    int origin = loss.id();
    for (int id = 0; id <= loss.id() && origin == loss.id(); ++id)
      for (double v : nodes_[id].value)
        if (!std::isfinite(v)) {
          origin = id;
          break;
        }
    throw NumericalError("backward: non-finite loss; first non-finite value at node #" + std::to_string(origin) +
                         " (" + nodes_[origin].op + ")");
  }
  if (!root.requires_grad) return;

  for (auto& n : nodes_) std::fill(n.grad.begin(), n.grad.end(), 0.0);
  root.grad[0] = 1.0;

  for (int id = loss.id(); id >= 0; --id) {
    Node& n = nodes_[id];
    if (!n.requires_grad || !n.backward) continue;
    for (double g : n.grad) {
      if (!std::isfinite(g))
        throw NumericalError("backward: non-finite gradient at node #" + std::to_string(id) + " (" +
                             n.op + ")");
    }
    n.backward(*this, id);
  }
}

}  // namespace csaot::nn
