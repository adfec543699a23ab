#include "csaot/kernels/affine.hpp"

namespace csaot::kernels {

void affine_serial(std::span<const double> weight, std::span<const double> bias,
                   std::span<const double> x, std::span<double> y) {
  const std::size_t rows = y.size();
  const std::size_t cols = x.size();
  for (std::size_t i = 0; i < rows; ++i) {
    const double* w = weight.data() + i * cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += w[j] * x[j];
    y[i] = bias.empty() ? sum : sum + bias[i];
  }
}

void affine_grad_params_serial(std::span<const double> g, std::span<const double> x,
                               std::span<double> grad_w, std::span<double> grad_b) {
  const std::size_t rows = g.size();
  const std::size_t cols = x.size();
  for (std::size_t i = 0; i < rows; ++i) {
    double* gw = grad_w.data() + i * cols;
    const double gi = g[i];
    for (std::size_t j = 0; j < cols; ++j) gw[j] += gi * x[j];
    if (!grad_b.empty()) grad_b[i] += gi;
  }
}

void affine_grad_input_serial(std::span<const double> weight, std::span<const double> g,
                              std::span<double> grad_x) {
  const std::size_t rows = g.size();
  const std::size_t cols = grad_x.size();
  for (std::size_t i = 0; i < rows; ++i) {
    const double* w = weight.data() + i * cols;
    const double gi = g[i];
    for (std::size_t j = 0; j < cols; ++j) grad_x[j] += w[j] * gi;
  }
}

}  // namespace csaot::kernels
