#pragma once

#include <string>
#include <vector>

#include "mdet/document.hpp"

namespace mdet {

struct CategoryRow {
  std::string label;
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
  double recall = 0, precision = 0, f1 = 0;
};

// Exact-boundary scores, micro-pooled over documents. When both sides are
// empty, R = P = F1 = 1 with the warning flag raised (documented convention
// so perfect runs on empty documents do not poison averages).
struct MetricsReport {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;
  double recall = 0, precision = 0, f1 = 0;
  bool empty_sets_warning = false;
  std::size_t oracle_unreachable = 0;
  std::vector<CategoryRow> per_category;

  std::string summary() const;
};

// single-set fixtures (one document's worth of spans)
MetricsReport score_mention_spans(const std::vector<Span>& predicted,
                                  const std::vector<Span>& gold);
MetricsReport score_ner_spans(const std::vector<LabeledSpan>& predicted,
                              const std::vector<LabeledSpan>& gold);

// corpus level: documents matched by doc_key; a prediction corpus whose key
// set differs from gold is a contract error. Predictions are the `mentions`
// (or `ner`) field of the prediction documents.
MetricsReport score_mentions(const std::vector<Document>& gold,
                             const std::vector<Document>& predicted);
MetricsReport score_ner(const std::vector<Document>& gold,
                        const std::vector<Document>& predicted);

}  // namespace mdet
