#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mdet/ops.hpp"
#include "mdet/params.hpp"
#include "mdet/spans.hpp"

namespace mdet {

// Feed-forward scorer: `layers` tanh hidden layers of width `hidden` with
// dropout on each hidden activation, then a linear output layer.
class Ffnn {
 public:
  Ffnn(ParamStore& store, const std::string& name, std::size_t input,
       std::size_t hidden, std::size_t layers, std::size_t output, Rng& rng);

  std::size_t output_dim() const { return output_; }
  Tensor apply(Tape& tape, Tensor x, bool train, Real dropout_rate,
               Rng& dropout_rng) const;

 private:
  std::vector<Tensor> ws_, bs_;
  Tensor w_out_, b_out_;
  std::size_t output_;
};

// Bilinear-plus-linear scorer over (start, end) representation pairs:
//   r(s, e) = h_s(s)^T W h_e(e) + h_s(s) . b
// `channels` stacks independent (W, b) maps; channel 0 alone is plain
// mention scoring, C channels give the C-way variant.
class BiaffineScorer {
 public:
  BiaffineScorer(ParamStore& store, const std::string& name, std::size_t dim,
                 std::size_t channels, Rng& rng);

  std::size_t dim() const { return dim_; }
  std::size_t channels() const { return channels_; }

  // h_s, h_e: [n x d] for one sentence -> per channel [n x n] with entry
  // (s, e) = raw score; both matrix products run over all pairs at once
  std::vector<Tensor> score_matrices(Tape& tape, Tensor h_s, Tensor h_e) const;

  Tensor weight() const { return w_; }
  Tensor bias() const { return b_; }

 private:
  Tensor w_;  // [d x d*channels], channel c = columns [c*d, (c+1)*d)
  Tensor b_;  // [d x channels]
  std::size_t dim_;
  std::size_t channels_;
};

// probability from a raw mention score
inline double mention_probability(double raw_score) {
  return raw_score >= 0 ? 1.0 / (1.0 + std::exp(-raw_score))
                        : std::exp(raw_score) / (1.0 + std::exp(raw_score));
}

// validity constraint: cells with start > end are never mentions
inline double masked_pair_probability(const Tensor& scores, std::size_t start,
                                      std::size_t end) {
  return start <= end ? mention_probability(double(scores.at(start, end))) : 0.0;
}

// row-wise softmax of plain values (prediction side; no tape)
std::vector<std::vector<double>> softmax_rows(const std::vector<std::vector<double>>& raw);

}  // namespace mdet
