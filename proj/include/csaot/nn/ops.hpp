#pragma once

// Differentiable operations on Tape nodes. All binary elementwise ops
// require equal sizes and throw InputError otherwise.

#include <cstddef>
#include <span>
#include <vector>

#include "csaot/nn/tape.hpp"

namespace csaot::nn {

// weight [out, in] · x + bias; bias may be null.
Var linear(ParamTensor& weight, ParamTensor* bias, const Var& x);

Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var div(const Var& a, const Var& b);
Var minimum(const Var& a, const Var& b);

Var scale(const Var& a, double c);
Var shift(const Var& a, double c);
Var neg(const Var& a);

// Broadcast a size-1 node over a vector.
Var mul_scalar(const Var& a, const Var& s);
Var div_scalar(const Var& a, const Var& s);

Var tanh(const Var& a);
Var sigmoid(const Var& a);
Var exp(const Var& a);
Var log(const Var& a);
Var square(const Var& a);
// Gradient is zero where the input lies outside [lo, hi].
Var clamp(const Var& a, double lo, double hi);

Var sum(const Var& a);
Var mean(const Var& a);
Var softmax(const Var& a);

Var concat(std::span<const Var> parts);
Var slice(const Var& a, std::size_t offset, std::size_t length);
Var gather(const Var& a, std::span<const std::size_t> indices);

}  // namespace csaot::nn
