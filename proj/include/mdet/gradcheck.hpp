#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mdet/tensor.hpp"

namespace mdet {

struct GradCheckEntry {
  std::string name;
  double max_rel_err = 0.0;
  bool pass = true;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double worst = 0.0;
  bool all_pass = true;
};

// Central finite differences against analytic gradients. `loss_fn` must
// rebuild the forward pass on the given tape each call (re-seeding any
// internal randomness so repeated evaluations see identical masks).
// Requires the 64-bit build.
GradCheckReport grad_check(const std::vector<std::pair<std::string, Tensor>>& params,
                           const std::function<Tensor(Tape&)>& loss_fn,
                           double epsilon = 1e-5, double tolerance = 1e-4);

}  // namespace mdet
