#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mdet/rng.hpp"
#include "mdet/tensor.hpp"

namespace mdet {

// Registry of named trainable tensors. Modules create their parameters
// through one store so the optimizer and checkpointing see a stable,
// construction-ordered list.
class ParamStore {
 public:
  // Glorot-style fan-based uniform init for weight matrices
  Tensor glorot(const std::string& name, std::size_t rows, std::size_t cols, Rng& rng) {
    Tensor t = Tensor::zeros({rows, cols}, true);
    const Real limit = Real(std::sqrt(6.0 / double(rows + cols)));
    for (Real& v : t.values()) v = Real(rng.uniform(-limit, limit));
    return track(name, t);
  }

  Tensor zeros(const std::string& name, std::vector<std::size_t> shape) {
    return track(name, Tensor::zeros(std::move(shape), true));
  }

  // small-uniform init for embedding tables
  Tensor table(const std::string& name, std::size_t rows, std::size_t cols, Rng& rng) {
    Tensor t = Tensor::zeros({rows, cols}, true);
    for (Real& v : t.values()) v = Real(rng.uniform(-0.05, 0.05));
    return track(name, t);
  }

  Tensor track(const std::string& name, Tensor t) {
    entries_.emplace_back(name, t);
    return t;
  }

  const std::vector<std::pair<std::string, Tensor>>& entries() const { return entries_; }

  std::vector<Tensor> tensors() const {
    std::vector<Tensor> out;
    out.reserve(entries_.size());
    for (const auto& [name, t] : entries_) out.push_back(t);
    return out;
  }

  void zero_grads() {
    for (auto& [name, t] : entries_) t.zero_grad();
  }

 private:
  std::vector<std::pair<std::string, Tensor>> entries_;
};

}  // namespace mdet
