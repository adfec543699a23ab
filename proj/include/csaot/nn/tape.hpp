#pragma once

// Reverse-mode differentiation over vector-valued nodes.
//
// A Tape records every operation of one forward pass. Nodes hold a value
// vector and, when they depend on a parameter, a gradient vector. Layers
// reference ParamTensors directly, so backward() writes straight into the
// parameters' grad buffers; those accumulate until zero_grad() is called.

#include <cstddef>
#include <deque>
#include <functional>
#include <string>
#include <vector>

namespace csaot::nn {

using Vector = std::vector<double>;

struct ParamTensor {
  std::string name;
  std::vector<std::size_t> shape;
  Vector values;
  Vector grad;

  ParamTensor() = default;
  ParamTensor(std::string name, std::vector<std::size_t> shape);

  std::size_t size() const { return values.size(); }
  std::size_t rows() const { return shape.empty() ? 0 : shape.front(); }
  std::size_t cols() const { return shape.size() < 2 ? 1 : shape[1]; }
  void zero_grad();
  // Throws NumericalError if any value or gradient is non-finite.
  void check_finite() const;
};

std::size_t shape_size(const std::vector<std::size_t>& shape);

class Tape;

// Handle to a node on a Tape. Cheap to copy; only valid while its Tape lives.
class Var {
 public:
  Var() = default;

  bool valid() const { return tape_ != nullptr; }
  int id() const { return id_; }
  Tape& tape() const { return *tape_; }
  std::size_t size() const;
  const Vector& value() const;
  double scalar() const;
  bool requires_grad() const;

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

class Tape {
 public:
  // Recording mode skips backward closures and gradient storage.
  enum class Mode { kTrain, kInference };

  explicit Tape(Mode mode = Mode::kTrain) : mode_(mode) {}
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Mode mode() const { return mode_; }
  bool recording() const { return mode_ == Mode::kTrain; }
  std::size_t size() const { return nodes_.size(); }

  Var constant(Vector value);
  // Leaf holding a copy of p.values; backward adds its gradient into p.grad.
  Var param(ParamTensor& p);

  // Propagates d(loss)/d(node) to every node and into parameter grads.
  // loss must have exactly one element.
  void backward(const Var& loss);

  using Backward = std::function<void(Tape&, int)>;
  // Adds a node. `requires_grad` should be true iff an input requires grad;
  // `fn` receives the tape and the new node's id and pushes the node's grad
  // into its inputs.
  Var record(const char* op, Vector value, bool requires_grad, Backward fn);

  const Vector& value(int id) const { return nodes_[id].value; }
  Vector& grad(int id) { return nodes_[id].grad; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }
  const char* op(int id) const { return nodes_[id].op; }

 private:
  struct Node {
    const char* op = "";
    Vector value;
    Vector grad;
    bool requires_grad = false;
    Backward backward;
  };

  Mode mode_;
  std::deque<Node> nodes_;
};

}  // namespace csaot::nn
