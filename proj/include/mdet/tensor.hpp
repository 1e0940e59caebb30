#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mdet/error.hpp"

namespace mdet {

#ifdef MDET_SCALAR_F32
using Real = float;
#else
using Real = double;
#endif

// Dense row-major tensor of rank 1 or 2. Tensor is a cheap handle onto
// shared storage; copies alias the same values/grad buffers, which is what
// lets backward closures write gradients into the tensors the caller holds.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<std::size_t> shape, bool requires_grad = false);
  static Tensor from(std::vector<std::size_t> shape, std::vector<Real> values,
                     bool requires_grad = false);
  static Tensor scalar(Real v, bool requires_grad = false);
  static Tensor row(std::vector<Real> values, bool requires_grad = false);

  bool defined() const { return impl_ != nullptr; }

  const std::vector<std::size_t>& shape() const { return impl_->shape; }
  std::size_t rank() const { return impl_->shape.size(); }
  std::size_t dim(std::size_t i) const { return impl_->shape[i]; }
  std::size_t numel() const { return impl_->values.size(); }

  // rank-2 accessors; rank-1 tensors behave as a single row
  std::size_t rows() const { return rank() == 2 ? dim(0) : 1; }
  std::size_t cols() const { return rank() == 2 ? dim(1) : dim(0); }

  std::vector<Real>& values() { return impl_->values; }
  const std::vector<Real>& values() const { return impl_->values; }

  Real& at(std::size_t i) { return impl_->values[i]; }
  Real at(std::size_t i) const { return impl_->values[i]; }
  Real& at(std::size_t i, std::size_t j) { return impl_->values[i * cols() + j]; }
  Real at(std::size_t i, std::size_t j) const { return impl_->values[i * cols() + j]; }

  // scalar value; ContractError when numel != 1
  Real value() const;

  bool requires_grad() const { return impl_->requires_grad; }
  void set_requires_grad(bool on) { impl_->requires_grad = on; }

  bool has_grad() const { return !impl_->grad.empty(); }
  // grad accumulator, allocated (zeroed, same shape) on first touch
  std::vector<Real>& grad();
  const std::vector<Real>& grad_or_empty() const { return impl_->grad; }
  void zero_grad();

  // identity of the underlying storage (used by Adam/checkpoint registries)
  const void* id() const { return impl_.get(); }

 private:
  struct Impl {
    std::vector<std::size_t> shape;
    std::vector<Real> values;
    std::vector<Real> grad;
    bool requires_grad = false;
  };
  std::shared_ptr<Impl> impl_;
};

// throws NumericError naming `what` if any value is NaN/Inf
void check_finite(const std::vector<Real>& values, const char* what);

std::string shape_str(const std::vector<std::size_t>& shape);

// Record of executed operations. Operations append themselves in execution
// order (inputs always precede their consumers), and backward() replays the
// closures in exact reverse order. Gradients accumulate across repeated
// backward calls; call zero_grad on parameters (or Adam, which zeroes after
// each step) to reset.
class Tape {
 public:
  // `out` is the operation's output; `back` propagates out.grad to inputs
  void record(Tensor out, std::function<void()> back);

  void backward(const Tensor& loss);
  void clear();

  bool enabled() const { return enabled_; }
  void set_enabled(bool on) { enabled_ = on; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor out;
    std::function<void()> back;
  };
  std::vector<Node> nodes_;
  bool enabled_ = true;
};

}  // namespace mdet
