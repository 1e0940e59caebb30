#include "mdet/tensor.hpp"

#include <cmath>
#include <sstream>

namespace mdet {

static std::size_t shape_product(const std::vector<std::size_t>& shape) {
  if (shape.empty() || shape.size() > 2) {
    throw ShapeError("tensor rank must be 1 or 2, got " + shape_str(shape));
  }
  std::size_t n = 1;
  for (std::size_t d : shape) {
    if (d == 0) throw ShapeError("tensor extents must be positive, got " + shape_str(shape));
    n *= d;
  }
  return n;
}

Tensor Tensor::zeros(std::vector<std::size_t> shape, bool requires_grad) {
  Tensor t;
  t.impl_ = std::make_shared<Impl>();
  t.impl_->values.assign(shape_product(shape), Real(0));
  t.impl_->shape = std::move(shape);
  t.impl_->requires_grad = requires_grad;
  return t;
}

Tensor Tensor::from(std::vector<std::size_t> shape, std::vector<Real> values,
                    bool requires_grad) {
  if (shape_product(shape) != values.size()) {
    throw ShapeError("tensor shape " + shape_str(shape) + " does not match " +
                     std::to_string(values.size()) + " values");
  }
  Tensor t;
  t.impl_ = std::make_shared<Impl>();
  t.impl_->shape = std::move(shape);
  t.impl_->values = std::move(values);
  t.impl_->requires_grad = requires_grad;
  return t;
}

Tensor Tensor::scalar(Real v, bool requires_grad) {
  return from({1}, {v}, requires_grad);
}

Tensor Tensor::row(std::vector<Real> values, bool requires_grad) {
  std::size_t n = values.size();
  return from({1, n}, std::move(values), requires_grad);
}

Real Tensor::value() const {
  if (!defined() || numel() != 1) {
    throw ContractError("expected a scalar tensor, got shape " +
                        (defined() ? shape_str(shape()) : std::string("<undefined>")));
  }
  return impl_->values[0];
}

std::vector<Real>& Tensor::grad() {
  if (impl_->grad.empty()) impl_->grad.assign(impl_->values.size(), Real(0));
  return impl_->grad;
}

void Tensor::zero_grad() {
  if (!impl_->grad.empty()) impl_->grad.assign(impl_->values.size(), Real(0));
}

void check_finite(const std::vector<Real>& values, const char* what) {
  for (Real v : values) {
    if (!std::isfinite(v)) {
      throw NumericError(std::string("non-finite value in ") + what);
    }
  }
}

std::string shape_str(const std::vector<std::size_t>& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

void Tape::record(Tensor out, std::function<void()> back) {
  nodes_.push_back(Node{std::move(out), std::move(back)});
}

void Tape::backward(const Tensor& loss) {
  if (!loss.defined() || loss.numel() != 1) {
    throw ContractError("backward requires a scalar loss, got shape " +
                        (loss.defined() ? shape_str(loss.shape()) : std::string("<undefined>")));
  }
  // Intermediate (node-output) grads are scratch space per pass; only leaf
  // tensors accumulate across repeated backward calls.
  for (Node& n : nodes_) n.out.zero_grad();
  Tensor seed = loss;
  seed.grad()[0] += Real(1);
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    if (it->back) it->back();
  }
  for (const Node& n : nodes_) {
    if (n.out.has_grad()) check_finite(n.out.grad_or_empty(), "backward pass");
  }
}

void Tape::clear() { nodes_.clear(); }

}  // namespace mdet
