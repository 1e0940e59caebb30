#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mdet/error.hpp"

namespace mdet {

// Contiguous token interval in flat document indices; end is inclusive.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
  auto operator<=>(const Span&) const = default;
  std::size_t width() const { return end - start + 1; }
};

struct LabeledSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;
  bool operator==(const LabeledSpan&) const = default;
  auto operator<=>(const LabeledSpan&) const = default;
};

struct SpanHash {
  std::size_t operator()(const Span& s) const {
    return std::hash<std::size_t>()(s.start * 1315423911u ^ s.end);
  }
};

// Sentence-segmented document with gold annotations. Mention and NER spans
// use flat (document-level) 0-based token indices with inclusive ends and
// never cross sentence boundaries.
struct Document {
  std::string doc_key;
  std::vector<std::vector<std::string>> sentences;
  std::vector<Span> mentions;
  std::vector<LabeledSpan> ner;
  // optional per-sentence sub-word segmentation ("##" continuation marker)
  std::vector<std::vector<std::string>> pieces;
  // optional subset of `mentions` marked as singletons
  std::vector<Span> singletons;

  std::size_t token_count() const;
  std::size_t sentence_count() const { return sentences.size(); }

  // flat index of a sentence's first token
  std::size_t sentence_begin(std::size_t sentence) const;
  // sentence containing a flat token index
  std::size_t sentence_of(std::size_t flat) const;
  // (sentence, local index) -> flat and back; a bijection over valid indices
  std::size_t to_flat(std::size_t sentence, std::size_t local) const;
  std::pair<std::size_t, std::size_t> to_local(std::size_t flat) const;

  const std::string& token(std::size_t flat) const;

  // throws DataError naming doc_key on any invariant violation
  void validate() const;
};

}  // namespace mdet
