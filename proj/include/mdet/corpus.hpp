#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mdet/document.hpp"

namespace mdet {

// Per-span prediction output. `probability` holds p_m for MD predictions;
// NER predictions carry a label as well.
struct PredictedSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;  // empty for plain mention detection
  double probability = 0.0;
};

struct LoadOptions {
  // drop spans listed in the document's "singletons" field
  bool drop_singletons = false;
  // reject NER labels outside this inventory when non-empty
  std::vector<std::string> label_inventory;
};

// One JSON record per line:
//   {"doc_key": "...", "sentences": [["tok", ...], ...],
//    "mentions": [[start, end], ...],            // flat, end-inclusive
//    "ner": [[start, end, "label"], ...],
//    "pieces": [["tok", "##piece", ...], ...],   // optional
//    "singletons": [[start, end], ...]}          // optional
// Prediction files are the same format with a probability appended to each
// mention ([start, end, p]) or ner entry ([start, end, label, p]); the
// probability is ignored when a file is read back as a corpus.
std::vector<Document> load_corpus(const std::string& path, const LoadOptions& opts = {});
std::vector<Document> parse_corpus(std::istream& in, const std::string& origin,
                                   const LoadOptions& opts = {});

void save_corpus(const std::vector<Document>& docs, const std::string& path);
std::string corpus_line(const Document& doc);

// predictions writer: same record layout, mentions/ner replaced by the
// predicted spans with probabilities included
void save_predictions(const std::vector<Document>& docs,
                      const std::vector<std::vector<PredictedSpan>>& predictions,
                      bool labeled, const std::string& path);

}  // namespace mdet
