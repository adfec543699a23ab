#include "csaot/kernels/affine.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csaot::kernels {

namespace {

// Column block width for the transposed product; keeps each thread's slice
// of grad_x in cache while it walks the rows.
constexpr std::int64_t kColumnBlock = 256;

}  // namespace

void affine_omp(std::span<const double> weight, std::span<const double> bias,
                std::span<const double> x, std::span<double> y) {
  const auto rows = static_cast<std::int64_t>(y.size());
  const std::size_t cols = x.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    const double* w = weight.data() + i * cols;
    double sum = 0.0;
    for (std::size_t j = 0; j < cols; ++j) sum += w[j] * x[j];
    y[i] = bias.empty() ? sum : sum + bias[i];
  }
}

void affine_grad_params_omp(std::span<const double> g, std::span<const double> x,
                            std::span<double> grad_w, std::span<double> grad_b) {
  const auto rows = static_cast<std::int64_t>(g.size());
  const std::size_t cols = x.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    double* gw = grad_w.data() + i * cols;
    const double gi = g[i];
    for (std::size_t j = 0; j < cols; ++j) gw[j] += gi * x[j];
    if (!grad_b.empty()) grad_b[i] += gi;
  }
}

void affine_grad_input_omp(std::span<const double> weight, std::span<const double> g,
                           std::span<double> grad_x) {
  const std::size_t rows = g.size();
  const auto cols = static_cast<std::int64_t>(grad_x.size());
  const std::int64_t blocks = (cols + kColumnBlock - 1) / kColumnBlock;
  // Each element of grad_x is owned by one block and still accumulated in
  // row order, matching the serial kernel bit for bit.
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t lo = b * kColumnBlock;
    const std::int64_t hi = std::min(cols, lo + kColumnBlock);
    for (std::size_t i = 0; i < rows; ++i) {
      const double* w = weight.data() + i * cols;
      const double gi = g[i];
      for (std::int64_t j = lo; j < hi; ++j) grad_x[j] += w[j] * gi;
    }
  }
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

void affine(std::span<const double> weight, std::span<const double> bias,
            std::span<const double> x, std::span<double> y) {
  if (openmp_enabled() && y.size() * x.size() >= kParallelThreshold)
    affine_omp(weight, bias, x, y);
  else
    affine_serial(weight, bias, x, y);
}

void affine_grad_params(std::span<const double> g, std::span<const double> x,
                        std::span<double> grad_w, std::span<double> grad_b) {
  if (openmp_enabled() && g.size() * x.size() >= kParallelThreshold)
    affine_grad_params_omp(g, x, grad_w, grad_b);
  else
    affine_grad_params_serial(g, x, grad_w, grad_b);
}

void affine_grad_input(std::span<const double> weight, std::span<const double> g,
                       std::span<double> grad_x) {
  if (openmp_enabled() && g.size() * grad_x.size() >= kParallelThreshold)
    affine_grad_input_omp(weight, g, grad_x);
  else
    affine_grad_input_serial(weight, g, grad_x);
}

}  // namespace csaot::kernels
