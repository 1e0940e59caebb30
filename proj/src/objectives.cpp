#include "mdet/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mdet {

GoldLabeling label_candidates(const std::vector<SpanCandidate>& candidates,
                              const Document& doc, bool ner,
                              const std::vector<std::string>& label_inventory) {
  GoldLabeling out;
  if (!ner) {
    std::map<Span, std::size_t> position;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      position[candidates[i].span] = i;
    }
    out.binary.assign(candidates.size(), Real(0));
    for (const Span& m : doc.mentions) {
      auto it = position.find(m);
      if (it == position.end()) {
        ++out.unreachable;
      } else {
        out.binary[it->second] = Real(1);
      }
    }
  } else {
    std::map<Span, std::size_t> position;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      position[candidates[i].span] = i;
    }
    out.classes.assign(candidates.size(), 0);
    for (const LabeledSpan& e : doc.ner) {
      auto label_it = std::find(label_inventory.begin(), label_inventory.end(), e.label);
      if (label_it == label_inventory.end()) {
        throw DataError("doc " + doc.doc_key + ": ner label '" + e.label +
                        "' is not in the configured inventory");
      }
      auto it = position.find(Span{e.start, e.end});
      if (it == position.end()) {
        ++out.unreachable;
      } else {
        // class 0 is "not a named mention"; categories start at 1
        out.classes[it->second] =
            1 + std::size_t(label_it - label_inventory.begin());
      }
    }
  }
  return out;
}

double sigmoid_ce_from_probs(const std::vector<double>& probs,
                             const std::vector<double>& labels) {
  if (probs.size() != labels.size()) {
    throw ContractError("sigmoid_ce_from_probs: " + std::to_string(probs.size()) +
                        " probabilities vs " + std::to_string(labels.size()) + " labels");
  }
  auto xlogy = [](double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); };
  double loss = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    loss -= xlogy(labels[i], probs[i]) + xlogy(1.0 - labels[i], 1.0 - probs[i]);
  }
  return loss;
}

double softmax_ce_from_probs(const std::vector<std::vector<double>>& probs,
                             const std::vector<std::size_t>& gold_class) {
  if (probs.size() != gold_class.size()) {
    throw ContractError("softmax_ce_from_probs: " + std::to_string(probs.size()) +
                        " rows vs " + std::to_string(gold_class.size()) + " labels");
  }
  double loss = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    loss -= std::log(probs[i][gold_class[i]]);
  }
  return loss;
}

}  // namespace mdet
