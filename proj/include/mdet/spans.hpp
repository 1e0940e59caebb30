#pragma once

#include <limits>
#include <vector>

#include "mdet/document.hpp"
#include "mdet/ops.hpp"
#include "mdet/params.hpp"

namespace mdet {

struct SpanCandidate {
  Span span;
  std::size_t sentence = 0;
  bool operator==(const SpanCandidate&) const = default;
};

inline constexpr std::size_t kUnlimitedWidth = std::numeric_limits<std::size_t>::max();

// All same-sentence spans of width <= max_width, ordered by (start, end).
// This order fixes tie-breaking everywhere downstream.
std::vector<SpanCandidate> enumerate_spans(const Document& doc, std::size_t max_width);

// one trainable vector per exact width 1..max_width
class WidthFeature {
 public:
  WidthFeature(ParamStore& store, const std::string& name, std::size_t max_width,
               std::size_t dim, Rng& rng);
  std::size_t dim() const { return dim_; }
  std::size_t max_width() const { return max_width_; }
  // rows for a batch of widths; ContractError when a width is outside 1..l
  Tensor rows(Tape& tape, const std::vector<std::size_t>& widths) const;

 private:
  Tensor table_;
  std::size_t max_width_;
  std::size_t dim_;
};

// Soft head-word: softmax over the span's attention logits, weights applied
// to the same contextual vectors. Returns [1 x d]; weights are positive and
// sum to 1, so the result stays in the convex hull of the span's vectors.
Tensor attention_head(Tape& tape, const Tensor& alpha, const Tensor& xstar,
                      const Span& span);

// [x*_s, x*_e, h*_i, phi(width)] rows for all candidates -> [N x (3d + phi)]
Tensor lee_representations(Tape& tape, const Tensor& xstar, const Tensor& alpha,
                           const std::vector<SpanCandidate>& candidates,
                           const WidthFeature& width);

// [x*_s, x*_e] rows for all candidates -> [N x 2d]
Tensor concat_representations(Tape& tape, const Tensor& xstar,
                              const std::vector<SpanCandidate>& candidates);

}  // namespace mdet
