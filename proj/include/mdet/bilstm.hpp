#pragma once

#include <string>
#include <vector>

#include "mdet/document.hpp"
#include "mdet/ops.hpp"
#include "mdet/params.hpp"

namespace mdet {

// Stacked bidirectional LSTM. Sentences are encoded independently (no state
// crosses a sentence boundary); each token's output is the concatenation of
// the final layer's forward and backward states (dim 2*hidden). Inter-layer
// dropout uses one variational (per-sequence) mask per direction input.
class BiLstm {
 public:
  struct Direction {
    Tensor w;  // [(in + H) x 4H], gate order i|f|g|o
    Tensor b;  // [4H]
  };
  struct Layer {
    Direction fw, bw;
  };

  BiLstm(ParamStore& store, const std::string& name, std::size_t input_dim,
         std::size_t hidden, std::size_t layers, Real dropout_rate, Rng& rng);
  // test hook: assemble from existing per-layer parameters
  BiLstm(std::vector<Layer> layers, std::size_t input_dim, std::size_t hidden,
         Real dropout_rate);

  std::size_t output_dim() const { return 2 * hidden_; }
  std::size_t hidden() const { return hidden_; }
  const std::vector<Layer>& layers() const { return layers_; }

  // x: [n x input_dim] for one sentence -> [n x 2H]
  Tensor encode_sentence(Tape& tape, Tensor x, bool train, Rng& dropout_rng) const;

  // token vectors for the whole document, grouped by sentence; empty
  // sentences are skipped with a warning. Returns [T x 2H].
  Tensor encode_document(Tape& tape, Tensor token_vectors, const Document& doc,
                         bool train, Rng& dropout_rng) const;

 private:
  Tensor run_direction(Tape& tape, const Tensor& x, const Direction& dir,
                       bool backward) const;

  std::vector<Layer> layers_;
  std::size_t input_dim_ = 0;
  std::size_t hidden_ = 0;
  Real dropout_rate_ = 0;
};

}  // namespace mdet
