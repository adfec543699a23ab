#include "csaot/nn/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csaot/errors.hpp"
#include "csaot/kernels/affine.hpp"

namespace csaot::nn {

namespace {

Tape& same_tape(const Var& a, const Var& b) {
  if (&a.tape() != &b.tape()) throw InputError("operands recorded on different tapes");
  return a.tape();
}

void require_same_size(const char* op, const Var& a, const Var& b) {
  if (a.size() != b.size())
    throw InputError(std::string(op) + ": size mismatch " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
}

void require_scalar(const char* op, const Var& s) {
  if (s.size() != 1) throw InputError(std::string(op) + ": expected a size-1 operand");
}

// y_i = f(x_i) with dy/dx expressed through (x_i, y_i).
template <typename F, typename D>
Var unary(const char* op, const Var& a, F f, D dfdx) {
  Tape& t = a.tape();
  const Vector& x = a.value();
  Vector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  const int ia = a.id();
  return t.record(op, std::move(y), a.requires_grad(), [ia, dfdx](Tape& tp, int self) {
    const Vector& xv = tp.value(ia);
    const Vector& yv = tp.value(self);
    const Vector& g = tp.grad(self);
    Vector& ga = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * dfdx(xv[i], yv[i]);
  });
}

}  // namespace

Var linear(ParamTensor& weight, ParamTensor* bias, const Var& x) {
  if (weight.shape.size() != 2 || weight.cols() != x.size())
    throw InputError("linear " + weight.name + ": input size " + std::to_string(x.size()) +
                     " does not match weight columns " + std::to_string(weight.cols()));
  if (bias != nullptr && bias->size() != weight.rows())
    throw InputError("linear " + weight.name + ": bias size mismatch");
  Tape& t = x.tape();
  Vector y(weight.rows());
  kernels::affine(weight.values, bias ? std::span<const double>(bias->values) : std::span<const double>{},
                  x.value(), y);
  const int ix = x.id();
  ParamTensor* w = &weight;
  return t.record("linear", std::move(y), true, [w, bias, ix](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    kernels::affine_grad_params(g, tp.value(ix), w->grad,
                                bias ? std::span<double>(bias->grad) : std::span<double>{});
    if (tp.requires_grad(ix)) kernels::affine_grad_input(w->values, g, tp.grad(ix));
  });
}

Var add(const Var& a, const Var& b) {
  Tape& t = same_tape(a, b);
  require_same_size("add", a, b);
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.value()[i] + b.value()[i];
  const int ia = a.id(), ib = b.id();
  return t.record("add", std::move(y), a.requires_grad() || b.requires_grad(), [ia, ib](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    if (tp.requires_grad(ia))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ia)[i] += g[i];
    if (tp.requires_grad(ib))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ib)[i] += g[i];
  });
}

Var sub(const Var& a, const Var& b) {
  Tape& t = same_tape(a, b);
  require_same_size("sub", a, b);
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.value()[i] - b.value()[i];
  const int ia = a.id(), ib = b.id();
  return t.record("sub", std::move(y), a.requires_grad() || b.requires_grad(), [ia, ib](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    if (tp.requires_grad(ia))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ia)[i] += g[i];
    if (tp.requires_grad(ib))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ib)[i] -= g[i];
  });
}

Var mul(const Var& a, const Var& b) {
  Tape& t = same_tape(a, b);
  require_same_size("mul", a, b);
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.value()[i] * b.value()[i];
  const int ia = a.id(), ib = b.id();
  return t.record("mul", std::move(y), a.requires_grad() || b.requires_grad(), [ia, ib](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    const Vector& av = tp.value(ia);
    const Vector& bv = tp.value(ib);
    if (tp.requires_grad(ia))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ia)[i] += g[i] * bv[i];
    if (tp.requires_grad(ib))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ib)[i] += g[i] * av[i];
  });
}

Var div(const Var& a, const Var& b) {
  Tape& t = same_tape(a, b);
  require_same_size("div", a, b);
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.value()[i] / b.value()[i];
  const int ia = a.id(), ib = b.id();
  return t.record("div", std::move(y), a.requires_grad() || b.requires_grad(), [ia, ib](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    const Vector& bv = tp.value(ib);
    const Vector& yv = tp.value(self);
    if (tp.requires_grad(ia))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ia)[i] += g[i] / bv[i];
    if (tp.requires_grad(ib))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ib)[i] -= g[i] * yv[i] / bv[i];
  });
}

Var minimum(const Var& a, const Var& b) {
  Tape& t = same_tape(a, b);
  require_same_size("minimum", a, b);
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::min(a.value()[i], b.value()[i]);
  const int ia = a.id(), ib = b.id();
  // Ties route the gradient to the first operand.
  return t.record("minimum", std::move(y), a.requires_grad() || b.requires_grad(), [ia, ib](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    const Vector& av = tp.value(ia);
    const Vector& bv = tp.value(ib);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const bool first = av[i] <= bv[i];
      if (first && tp.requires_grad(ia)) tp.grad(ia)[i] += g[i];
      if (!first && tp.requires_grad(ib)) tp.grad(ib)[i] += g[i];
    }
  });
}

Var scale(const Var& a, double c) {
  return unary("scale", a, [c](double x) { return c * x; }, [c](double, double) { return c; });
}

Var shift(const Var& a, double c) {
  return unary("shift", a, [c](double x) { return x + c; }, [](double, double) { return 1.0; });
}

Var neg(const Var& a) { return scale(a, -1.0); }

Var mul_scalar(const Var& a, const Var& s) {
  Tape& t = same_tape(a, s);
  require_scalar("mul_scalar", s);
  const double sv = s.value()[0];
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.value()[i] * sv;
  const int ia = a.id(), is = s.id();
  return t.record("mul_scalar", std::move(y), a.requires_grad() || s.requires_grad(), [ia, is](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    const Vector& av = tp.value(ia);
    const double sval = tp.value(is)[0];
    if (tp.requires_grad(ia))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ia)[i] += g[i] * sval;
    if (tp.requires_grad(is)) {
      double acc = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * av[i];
      tp.grad(is)[0] += acc;
    }
  });
}

Var div_scalar(const Var& a, const Var& s) {
  Tape& t = same_tape(a, s);
  require_scalar("div_scalar", s);
  const double sv = s.value()[0];
  Vector y(a.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = a.value()[i] / sv;
  const int ia = a.id(), is = s.id();
  return t.record("div_scalar", std::move(y), a.requires_grad() || s.requires_grad(), [ia, is](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    const Vector& yv = tp.value(self);
    const double sval = tp.value(is)[0];
    if (tp.requires_grad(ia))
      for (std::size_t i = 0; i < g.size(); ++i) tp.grad(ia)[i] += g[i] / sval;
    if (tp.requires_grad(is)) {
      double acc = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * yv[i];
      tp.grad(is)[0] -= acc / sval;
    }
  });
}

Var tanh(const Var& a) {
  return unary("tanh", a, [](double x) { return std::tanh(x); },
               [](double, double y) { return 1.0 - y * y; });
}

Var sigmoid(const Var& a) {
  return unary("sigmoid", a, [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
               [](double, double y) { return y * (1.0 - y); });
}

Var exp(const Var& a) {
  return unary("exp", a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Var log(const Var& a) {
  return unary("log", a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Var square(const Var& a) {
  return unary("square", a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Var clamp(const Var& a, double lo, double hi) {
  return unary(
      "clamp", a, [lo, hi](double x) { return std::clamp(x, lo, hi); },
      [lo, hi](double x, double) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
}

Var sum(const Var& a) {
  Tape& t = a.tape();
  double s = 0.0;
  for (double v : a.value()) s += v;
  const int ia = a.id();
  return t.record("sum", Vector{s}, a.requires_grad(), [ia](Tape& tp, int self) {
    const double g = tp.grad(self)[0];
    for (double& ga : tp.grad(ia)) ga += g;
  });
}

Var mean(const Var& a) {
  if (a.size() == 0) throw InputError("mean of an empty node");
  return scale(sum(a), 1.0 / static_cast<double>(a.size()));
}

Var softmax(const Var& a) {
  Tape& t = a.tape();
  const Vector& x = a.value();
  if (x.empty()) throw InputError("softmax of an empty node");
  const double mx = *std::max_element(x.begin(), x.end());
  Vector y(x.size());
  double z = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = std::exp(x[i] - mx);
    z += y[i];
  }
  for (double& v : y) v /= z;
  const int ia = a.id();
  return t.record("softmax", std::move(y), a.requires_grad(), [ia](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    const Vector& yv = tp.value(self);
    double dot = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * yv[i];
    Vector& ga = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += yv[i] * (g[i] - dot);
  });
}

Var concat(std::span<const Var> parts) {
  if (parts.empty()) throw InputError("concat of zero parts");
  Tape& t = parts.front().tape();
  Vector y;
  std::vector<int> ids;
  std::vector<std::size_t> offsets;
  bool needs = false;
  for (const Var& p : parts) {
    if (&p.tape() != &t) throw InputError("concat: operands recorded on different tapes");
    offsets.push_back(y.size());
    ids.push_back(p.id());
    y.insert(y.end(), p.value().begin(), p.value().end());
    needs = needs || p.requires_grad();
  }
  return t.record("concat", std::move(y), needs, [ids, offsets](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!tp.requires_grad(ids[k])) continue;
      Vector& gp = tp.grad(ids[k]);
      for (std::size_t i = 0; i < gp.size(); ++i) gp[i] += g[offsets[k] + i];
    }
  });
}

Var slice(const Var& a, std::size_t offset, std::size_t length) {
  if (offset + length > a.size()) throw InputError("slice out of range");
  Tape& t = a.tape();
  Vector y(a.value().begin() + offset, a.value().begin() + offset + length);
  const int ia = a.id();
  return t.record("slice", std::move(y), a.requires_grad(), [ia, offset](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    Vector& ga = tp.grad(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[offset + i] += g[i];
  });
}

Var gather(const Var& a, std::span<const std::size_t> indices) {
  Tape& t = a.tape();
  Vector y(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= a.size()) throw InputError("gather index out of range");
    y[k] = a.value()[indices[k]];
  }
  const int ia = a.id();
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  return t.record("gather", std::move(y), a.requires_grad(), [ia, idx](Tape& tp, int self) {
    const Vector& g = tp.grad(self);
    Vector& ga = tp.grad(ia);
    for (std::size_t k = 0; k < idx.size(); ++k) ga[idx[k]] += g[k];
  });
}

}  // namespace csaot::nn
