#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdet/spans.hpp"

namespace mdet {

// Output modes. High-recall emits the top floor(lambda * T) spans per
// document; high-F1 emits spans with probability strictly above beta.
struct OperatingMode {
  enum class Kind { high_recall, high_f1 };
  Kind kind = Kind::high_f1;
  double lambda = 0.4;
  double beta = 0.5;

  static OperatingMode high_recall(double lambda) {
    return {Kind::high_recall, lambda, 0.0};
  }
  static OperatingMode high_f1(double beta) { return {Kind::high_f1, 0.0, beta}; }
};

// floor(lambda * T) with a tiny guard so mathematically integral products
// (0.3 * 10) are not truncated by binary representation error
std::size_t span_budget(double lambda, std::size_t token_count);

// Candidate indices of the k = min(budget, n) largest probabilities. Ties
// resolve to earlier start, then shorter span, then enumeration order,
// which is exactly the candidates' enumeration order, so a stable sort on
// probability implements the whole rule. Returned indices ascend.
std::vector<std::size_t> select_high_recall(const std::vector<double>& probs,
                                            double lambda, std::size_t token_count);

// indices with p strictly greater than beta, ascending
std::vector<std::size_t> select_high_f1(const std::vector<double>& probs, double beta);

// C-way selection over per-candidate class probabilities (class 0 = not a
// mention). High-F1: argmax != 0. High-recall: top floor(lambda*T) ranked by
// 1 - p(null), labeled by the best non-null class.
struct LabeledSelection {
  std::vector<std::size_t> index;   // into the candidate list
  std::vector<std::size_t> label;   // 1-based class id
  std::vector<double> probability;  // probability of the chosen class
};
LabeledSelection select_ner(const std::vector<std::vector<double>>& class_probs,
                            const OperatingMode& mode, std::size_t token_count);

}  // namespace mdet
