#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mdet/checkpoint.hpp"
#include "mdet/corpus.hpp"
#include "mdet/metrics.hpp"
#include "mdet/model.hpp"
#include "mdet/selection.hpp"

namespace mdet {

// predictions for one corpus under an operating mode (no tape, no dropout)
std::vector<std::vector<PredictedSpan>> predict_corpus(Model& model,
                                                       const std::vector<Document>& docs,
                                                       const OperatingMode& mode);

// prediction + exact-boundary scoring against the documents' own gold
MetricsReport evaluate_model(Model& model, const std::vector<Document>& docs,
                             const OperatingMode& mode);

struct TrainResult {
  std::size_t steps = 0;
  double best_dev_f1 = -1.0;
  MetricsReport final_dev;
  bool has_dev = false;
};

// Deterministic single-worker training loop: batch_size documents per Adam
// step (losses scaled to a mean), dev evaluation every eval_interval steps
// with the best checkpoint kept, final checkpoint always written. One JSON
// metrics record per evaluation goes to `metrics_log` when non-null.
TrainResult train_model(const RunConfig& config, Model& model,
                        const std::vector<Document>& train_docs,
                        const std::vector<Document>& dev_docs,
                        std::ostream* metrics_log);

}  // namespace mdet
