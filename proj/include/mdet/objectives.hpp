#pragma once

#include <string>
#include <vector>

#include "mdet/document.hpp"
#include "mdet/spans.hpp"

namespace mdet {

// Labels aligned with an enumerated candidate list. Gold spans that no
// candidate covers (wider than the enumeration cap) are counted as
// unreachable so recall ceilings stay visible.
struct GoldLabeling {
  std::vector<Real> binary;            // y_i in {0,1}, mention detection
  std::vector<std::size_t> classes;    // class ids, 0 = not a mention (NER)
  std::size_t unreachable = 0;
};

GoldLabeling label_candidates(const std::vector<SpanCandidate>& candidates,
                              const Document& doc, bool ner,
                              const std::vector<std::string>& label_inventory);

// Probability-space cross entropies with the 0*log(0) = 0 convention.
// These are the reference route for the logit-space tape ops: exact at the
// endpoints (loss 0 iff p = y) but saturating, so training never uses them.
double sigmoid_ce_from_probs(const std::vector<double>& probs,
                             const std::vector<double>& labels);
double softmax_ce_from_probs(const std::vector<std::vector<double>>& probs,
                             const std::vector<std::size_t>& gold_class);

}  // namespace mdet
