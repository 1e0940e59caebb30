#include "mdet/spans.hpp"

namespace mdet {

std::vector<SpanCandidate> enumerate_spans(const Document& doc, std::size_t max_width) {
  if (max_width < 1) throw ContractError("enumerate_spans: max width must be >= 1");
  std::vector<SpanCandidate> out;
  std::size_t offset = 0;
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    const std::size_t n = doc.sentences[s].size();
    for (std::size_t start = 0; start < n; ++start) {
      const std::size_t max_end = std::min(n - 1, max_width == kUnlimitedWidth
                                                      ? n - 1
                                                      : start + max_width - 1);
      for (std::size_t end = start; end <= max_end; ++end) {
        out.push_back(SpanCandidate{Span{offset + start, offset + end}, s});
      }
    }
    offset += n;
  }
  return out;
}

WidthFeature::WidthFeature(ParamStore& store, const std::string& name,
                           std::size_t max_width, std::size_t dim, Rng& rng)
    : max_width_(max_width), dim_(dim) {
  table_ = store.table(name, max_width, dim, rng);
}

Tensor WidthFeature::rows(Tape& tape, const std::vector<std::size_t>& widths) const {
  std::vector<std::size_t> ids;
  ids.reserve(widths.size());
  for (std::size_t w : widths) {
    if (w < 1 || w > max_width_) {
      throw ContractError("width feature: width " + std::to_string(w) +
                          " outside table range 1.." + std::to_string(max_width_));
    }
    ids.push_back(w - 1);
  }
  return embedding_lookup(tape, table_, ids);
}

Tensor attention_head(Tape& tape, const Tensor& alpha, const Tensor& xstar,
                      const Span& span) {
  Tensor logits = slice_rows(tape, alpha, span.start, span.end + 1);  // [w x 1]
  Tensor weights = row_softmax(tape, transpose(tape, logits));        // [1 x w]
  Tensor vectors = slice_rows(tape, xstar, span.start, span.end + 1); // [w x d]
  return matmul(tape, weights, vectors);                              // [1 x d]
}

Tensor lee_representations(Tape& tape, const Tensor& xstar, const Tensor& alpha,
                           const std::vector<SpanCandidate>& candidates,
                           const WidthFeature& width) {
  std::vector<std::size_t> starts, ends, widths;
  starts.reserve(candidates.size());
  ends.reserve(candidates.size());
  widths.reserve(candidates.size());
  std::vector<Tensor> heads;
  heads.reserve(candidates.size());
  for (const SpanCandidate& c : candidates) {
    starts.push_back(c.span.start);
    ends.push_back(c.span.end);
    widths.push_back(c.span.width());
    heads.push_back(attention_head(tape, alpha, xstar, c.span));
  }
  Tensor start_rows = select_rows(tape, xstar, starts);
  Tensor end_rows = select_rows(tape, xstar, ends);
  Tensor head_rows = concat_rows(tape, heads);
  Tensor width_rows = width.rows(tape, widths);
  return concat_cols(tape, {start_rows, end_rows, head_rows, width_rows});
}

Tensor concat_representations(Tape& tape, const Tensor& xstar,
                              const std::vector<SpanCandidate>& candidates) {
  std::vector<std::size_t> starts, ends;
  starts.reserve(candidates.size());
  ends.reserve(candidates.size());
  for (const SpanCandidate& c : candidates) {
    starts.push_back(c.span.start);
    ends.push_back(c.span.end);
  }
  Tensor start_rows = select_rows(tape, xstar, starts);
  Tensor end_rows = select_rows(tape, xstar, ends);
  return concat_cols(tape, {start_rows, end_rows});
}

}  // namespace mdet
