#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdet/document.hpp"
#include "mdet/ops.hpp"
#include "mdet/params.hpp"

namespace mdet {

// Token and character inventories built from a training corpus (min
// frequency 1). Word id 0 is the trained UNK vector; char id 0 pads short
// tokens, id 1 is the unknown byte.
struct Vocabulary {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> word_ids;
  std::vector<unsigned char> chars;
  std::size_t char_ids[256] = {};

  static Vocabulary build(const std::vector<Document>& docs);
  static Vocabulary from_lists(std::vector<std::string> words,
                               std::vector<unsigned char> chars);

  std::size_t word_id(const std::string& token) const;
  std::size_t char_id(unsigned char c) const { return char_ids[c]; }
  std::size_t word_count() const { return words.size() + 1; }
  std::size_t char_count() const { return chars.size() + 2; }
};

// One source of per-token vectors. Providers are read-only at lookup time
// except for gradients flowing into trainable tables.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::size_t dimension() const = 0;
  virtual bool frozen() const = 0;
  // [T x dimension] for the whole document
  virtual Tensor lookup(Tape& tape, const Document& doc) = 0;
};

// vocabulary table lookup; every token maps to its trained row (UNK for
// out-of-vocabulary tokens)
class TrainableLookup : public EmbeddingProvider {
 public:
  TrainableLookup(ParamStore& store, const std::string& name, const Vocabulary& vocab,
                  std::size_t dim, Rng& rng);
  std::size_t dimension() const override { return dim_; }
  bool frozen() const override { return false; }
  Tensor lookup(Tape& tape, const Document& doc) override;
  Tensor table() const { return table_; }

 private:
  const Vocabulary* vocab_;
  Tensor table_;
  std::size_t dim_;
};

// token -> hash bucket -> trained row
class HashedLookup : public EmbeddingProvider {
 public:
  HashedLookup(ParamStore& store, const std::string& name, std::size_t buckets,
               std::size_t dim, std::uint64_t hash_seed, Rng& rng);
  std::size_t dimension() const override { return dim_; }
  bool frozen() const override { return false; }
  Tensor lookup(Tape& tape, const Document& doc) override;
  std::size_t bucket(const std::string& token) const;

 private:
  Tensor table_;
  std::size_t buckets_;
  std::size_t dim_;
  std::uint64_t hash_seed_;
};

// frozen per-document vectors loaded from disk (see vectors_file.hpp);
// files holding one record per sub-word piece are aligned to tokens via
// their first piece
class PrecomputedProvider : public EmbeddingProvider {
 public:
  PrecomputedProvider(std::string directory, std::size_t dim);
  std::size_t dimension() const override { return dim_; }
  bool frozen() const override { return true; }
  Tensor lookup(Tape& tape, const Document& doc) override;

 private:
  std::string directory_;
  std::size_t dim_;
  std::unordered_map<std::string, Tensor> cache_;
};

// character convolution encoder: trainable char embeddings, one filter bank
// per window width, max-over-time pooling; output dim = widths * filters
class CharConvEncoder {
 public:
  CharConvEncoder(ParamStore& store, const std::string& name, const Vocabulary& vocab,
                  Rng& rng, std::size_t char_dim = 8,
                  std::vector<std::size_t> windows = {3, 4, 5}, std::size_t filters = 50);
  std::size_t output_dim() const { return windows_.size() * filters_; }
  // [T x output_dim]
  Tensor encode(Tape& tape, const Document& doc) const;

 private:
  const Vocabulary* vocab_;
  Tensor char_table_;
  struct Bank {
    std::size_t width;
    Tensor w;
    Tensor b;
  };
  std::vector<Bank> banks_;
  std::vector<std::size_t> windows_;
  std::size_t filters_;
};

// concatenation of all active providers (+ char encoder); output dim is the
// sum of provider dimensions
Tensor embed_tokens(Tape& tape, const Document& doc,
                    const std::vector<std::shared_ptr<EmbeddingProvider>>& providers,
                    const CharConvEncoder* char_encoder);

}  // namespace mdet
