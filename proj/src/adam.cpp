#include "mdet/adam.hpp"

#include <cmath>

namespace mdet {

Adam::Adam(std::vector<Tensor> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const Tensor& p : params_) {
    m_.emplace_back(p.numel(), Real(0));
    v_.emplace_back(p.numel(), Real(0));
  }
}

void Adam::step() {
  for (const Tensor& p : params_) {
    if (!p.has_grad()) {
      throw ContractError("adam: parameter of shape " + shape_str(p.shape()) +
                          " has no gradient; run backward first");
    }
  }
  ++step_count_;
  const Real b1 = config_.beta1, b2 = config_.beta2;
  const Real corr1 = Real(1) - std::pow(b1, Real(step_count_));
  const Real corr2 = Real(1) - std::pow(b2, Real(step_count_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Tensor& p = params_[k];
    std::vector<Real>& g = p.grad();
    std::vector<Real>& m = m_[k];
    std::vector<Real>& v = v_[k];
    Real* pv = p.values().data();
    for (std::size_t i = 0; i < g.size(); ++i) {
      m[i] = b1 * m[i] + (Real(1) - b1) * g[i];
      v[i] = b2 * v[i] + (Real(1) - b2) * g[i] * g[i];
      const Real mhat = m[i] / corr1;
      const Real vhat = v[i] / corr2;
      pv[i] -= config_.learning_rate * mhat / (std::sqrt(vhat) + config_.epsilon);
    }
    p.zero_grad();
    check_finite(p.values(), "adam update");
  }
}

}  // namespace mdet
