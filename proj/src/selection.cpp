#include "mdet/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdet {

std::size_t span_budget(double lambda, std::size_t token_count) {
  if (lambda <= 0) throw ContractError("span budget: lambda must be positive");
  return static_cast<std::size_t>(std::floor(lambda * double(token_count) + 1e-9));
}

std::vector<std::size_t> select_high_recall(const std::vector<double>& probs,
                                            double lambda, std::size_t token_count) {
  const std::size_t k = std::min(span_budget(lambda, token_count), probs.size());
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<std::size_t> select_high_f1(const std::vector<double>& probs, double beta) {
  if (!(beta > 0 && beta < 1)) {
    throw ContractError("high-f1 selection: beta must lie in (0, 1)");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > beta) out.push_back(i);
  }
  return out;
}

LabeledSelection select_ner(const std::vector<std::vector<double>>& class_probs,
                            const OperatingMode& mode, std::size_t token_count) {
  const std::size_t n = class_probs.size();
  auto best_category = [&](std::size_t i) {
    std::size_t best = 1;
    for (std::size_t c = 2; c < class_probs[i].size(); ++c) {
      if (class_probs[i][c] > class_probs[i][best]) best = c;
    }
    return best;
  };

  LabeledSelection out;
  if (mode.kind == OperatingMode::Kind::high_f1) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t argmax = 0;
      for (std::size_t c = 1; c < class_probs[i].size(); ++c) {
        if (class_probs[i][c] > class_probs[i][argmax]) argmax = c;
      }
      if (argmax != 0) {
        out.index.push_back(i);
        out.label.push_back(argmax);
        out.probability.push_back(class_probs[i][argmax]);
      }
    }
  } else {
    std::vector<double> mention_prob(n);
    for (std::size_t i = 0; i < n; ++i) mention_prob[i] = 1.0 - class_probs[i][0];
    std::vector<std::size_t> picked =
        select_high_recall(mention_prob, mode.lambda, token_count);
    for (std::size_t i : picked) {
      const std::size_t c = best_category(i);
      out.index.push_back(i);
      out.label.push_back(c);
      out.probability.push_back(class_probs[i][c]);
    }
  }
  return out;
}

}  // namespace mdet
