#pragma once

#include <memory>
#include <vector>

#include "mdet/bilstm.hpp"
#include "mdet/config.hpp"
#include "mdet/embeddings.hpp"
#include "mdet/heads.hpp"
#include "mdet/objectives.hpp"
#include "mdet/spans.hpp"

namespace mdet {

// One document's candidate spans with their raw scores and probabilities.
struct DocScores {
  std::vector<SpanCandidate> candidates;
  Tensor logits;  // [N x channels]; tape-connected during training
  std::vector<double> mention_probs;             // channels == 1
  std::vector<std::vector<double>> class_probs;  // channels > 1
  std::vector<Tensor> sentence_matrices;         // biaffine channel-0 matrices
};

// Full mention detector: embedding providers -> optional BiLSTM -> one of
// the three scoring heads. Parameter creation order is fixed by the config,
// so a (config, vocabulary, seed) triple rebuilds the identical registry.
class Model {
 public:
  Model(ModelConfig config, Vocabulary vocab);

  DocScores score_document(Tape& tape, const Document& doc, bool train,
                           Rng& dropout_rng);

  // summed cross entropy over the document's candidates
  Tensor loss(Tape& tape, const DocScores& scores, const GoldLabeling& labels) const;

  GoldLabeling label_for(const DocScores& scores, const Document& doc) const;

  const ModelConfig& config() const { return cfg_; }
  const Vocabulary& vocabulary() const { return vocab_; }
  ParamStore& params() { return store_; }
  const ParamStore& params() const { return store_; }

 private:
  Tensor token_representations(Tape& tape, const Document& doc, bool train,
                               Rng& dropout_rng);

  ModelConfig cfg_;
  Vocabulary vocab_;
  ParamStore store_;
  std::vector<std::shared_ptr<EmbeddingProvider>> providers_;
  std::unique_ptr<CharConvEncoder> char_encoder_;
  std::unique_ptr<BiLstm> bilstm_;

  std::unique_ptr<Ffnn> attention_ffnn_;  // lee
  std::unique_ptr<WidthFeature> width_;   // lee
  std::unique_ptr<Ffnn> mention_ffnn_;    // lee, concat
  std::unique_ptr<Ffnn> start_ffnn_;      // biaffine
  std::unique_ptr<Ffnn> end_ffnn_;        // biaffine
  std::unique_ptr<BiaffineScorer> biaffine_;
};

}  // namespace mdet
