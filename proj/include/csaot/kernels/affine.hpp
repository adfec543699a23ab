#pragma once

// Dense affine kernels used by every linear layer.
//
// Weights are row-major with shape [rows, cols]. Each kernel exists twice:
// a serial reference and an OpenMP version. Both accumulate every output
// element in the same order, so their results are bitwise identical; the
// tests rely on that and so does run-to-run determinism of training.

#include <cstddef>
#include <span>

namespace csaot::kernels {

// y = W x + b   (b may be empty)
void affine_serial(std::span<const double> weight, std::span<const double> bias,
                   std::span<const double> x, std::span<double> y);
void affine_omp(std::span<const double> weight, std::span<const double> bias,
                std::span<const double> x, std::span<double> y);

// grad_w += g xᵀ, grad_b += g   (grad_b may be empty)
void affine_grad_params_serial(std::span<const double> g, std::span<const double> x,
                               std::span<double> grad_w, std::span<double> grad_b);
void affine_grad_params_omp(std::span<const double> g, std::span<const double> x,
                            std::span<double> grad_w, std::span<double> grad_b);

// grad_x += Wᵀ g
void affine_grad_input_serial(std::span<const double> weight, std::span<const double> g,
                              std::span<double> grad_x);
void affine_grad_input_omp(std::span<const double> weight, std::span<const double> g,
                           std::span<double> grad_x);

// Dispatchers: pick the OpenMP kernel for large problems when built with
// OpenMP, otherwise the serial one.
void affine(std::span<const double> weight, std::span<const double> bias,
            std::span<const double> x, std::span<double> y);
void affine_grad_params(std::span<const double> g, std::span<const double> x,
                        std::span<double> grad_w, std::span<double> grad_b);
void affine_grad_input(std::span<const double> weight, std::span<const double> g,
                       std::span<double> grad_x);

// Work (rows*cols) above which the dispatchers go parallel.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

bool openmp_enabled();

}  // namespace csaot::kernels
