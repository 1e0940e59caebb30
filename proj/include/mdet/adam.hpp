#pragma once

#include <cstdint>
#include <vector>

#include "mdet/tensor.hpp"

namespace mdet {

struct AdamConfig {
  Real learning_rate = Real(1e-3);
  Real beta1 = Real(0.9);
  Real beta2 = Real(0.999);
  Real epsilon = Real(1e-8);
};

// Bias-corrected Adam over a fixed parameter list. step() requires every
// parameter's grad to be populated (allocated) and zeroes all grads after
// the update.
class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamConfig config);

  void step();
  std::size_t steps() const { return step_count_; }
  const AdamConfig& config() const { return config_; }

  // moment accessors for tests
  const std::vector<Real>& first_moment(std::size_t i) const { return m_[i]; }
  const std::vector<Real>& second_moment(std::size_t i) const { return v_[i]; }

 private:
  std::vector<Tensor> params_;
  std::vector<std::vector<Real>> m_;
  std::vector<std::vector<Real>> v_;
  AdamConfig config_;
  std::size_t step_count_ = 0;
};

}  // namespace mdet
