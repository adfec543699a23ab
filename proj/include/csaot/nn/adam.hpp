#pragma once

#include <cstdint>
#include <vector>

#include "csaot/nn/tape.hpp"

namespace csaot::nn {

struct AdamConfig {
  double lr = 0.003;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adaptive-moment optimizer with bias correction. Holds only the moment
// buffers, indexed like the parameter list passed to step(), so the owner
// can be copied freely.
class Adam {
 public:
  Adam() = default;
  explicit Adam(AdamConfig config);

  // Applies one update from the current grads, then clears them. Throws
  // NumericalError and leaves everything untouched if an update is not finite.
  void step(const std::vector<ParamTensor*>& params);

  std::int64_t steps() const { return steps_; }
  void set_steps(std::int64_t s) { steps_ = s; }
  const AdamConfig& config() const { return config_; }
  void set_lr(double lr);

  std::vector<Vector>& first_moments() { return m_; }
  std::vector<Vector>& second_moments() { return v_; }
  const std::vector<Vector>& first_moments() const { return m_; }
  const std::vector<Vector>& second_moments() const { return v_; }

 private:
  AdamConfig config_;
  std::vector<Vector> m_;
  std::vector<Vector> v_;
  std::int64_t steps_ = 0;
};

}  // namespace csaot::nn
