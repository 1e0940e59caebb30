#include "mdet/embeddings.hpp"

#include <algorithm>

#include "mdet/alignment.hpp"
#include "mdet/vectors_file.hpp"

namespace mdet {

Vocabulary Vocabulary::build(const std::vector<Document>& docs) {
  Vocabulary v;
  bool char_seen[256] = {};
  for (const Document& doc : docs) {
    for (const auto& sentence : doc.sentences) {
      for (const std::string& token : sentence) {
        if (v.word_ids.emplace(token, v.words.size() + 1).second) {
          v.words.push_back(token);
        }
        for (unsigned char c : token) char_seen[c] = true;
      }
    }
  }
  for (int c = 0; c < 256; ++c) {
    if (char_seen[c]) v.chars.push_back(static_cast<unsigned char>(c));
  }
  for (std::size_t i = 0; i < v.chars.size(); ++i) v.char_ids[v.chars[i]] = i + 2;
  for (int c = 0; c < 256; ++c) {
    if (!char_seen[c]) v.char_ids[c] = 1;  // unknown byte
  }
  return v;
}

Vocabulary Vocabulary::from_lists(std::vector<std::string> words,
                                  std::vector<unsigned char> chars) {
  Vocabulary v;
  v.words = std::move(words);
  for (std::size_t i = 0; i < v.words.size(); ++i) v.word_ids[v.words[i]] = i + 1;
  v.chars = std::move(chars);
  for (int c = 0; c < 256; ++c) v.char_ids[c] = 1;
  for (std::size_t i = 0; i < v.chars.size(); ++i) v.char_ids[v.chars[i]] = i + 2;
  return v;
}

std::size_t Vocabulary::word_id(const std::string& token) const {
  auto it = word_ids.find(token);
  return it == word_ids.end() ? 0 : it->second;
}

static std::vector<std::size_t> doc_word_ids(const Vocabulary& vocab, const Document& doc) {
  std::vector<std::size_t> ids;
  ids.reserve(doc.token_count());
  for (const auto& sentence : doc.sentences)
    for (const std::string& token : sentence) ids.push_back(vocab.word_id(token));
  return ids;
}

TrainableLookup::TrainableLookup(ParamStore& store, const std::string& name,
                                 const Vocabulary& vocab, std::size_t dim, Rng& rng)
    : vocab_(&vocab), dim_(dim) {
  table_ = store.table(name, vocab.word_count(), dim, rng);
}

Tensor TrainableLookup::lookup(Tape& tape, const Document& doc) {
  return embedding_lookup(tape, table_, doc_word_ids(*vocab_, doc));
}

HashedLookup::HashedLookup(ParamStore& store, const std::string& name,
                           std::size_t buckets, std::size_t dim,
                           std::uint64_t hash_seed, Rng& rng)
    : buckets_(buckets), dim_(dim), hash_seed_(hash_seed) {
  table_ = store.table(name, buckets, dim, rng);
}

std::size_t HashedLookup::bucket(const std::string& token) const {
  // FNV-1a, seed folded into the offset basis
  std::uint64_t h = 0xcbf29ce484222325ULL ^ hash_seed_;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h % buckets_);
}

Tensor HashedLookup::lookup(Tape& tape, const Document& doc) {
  std::vector<std::size_t> ids;
  ids.reserve(doc.token_count());
  for (const auto& sentence : doc.sentences)
    for (const std::string& token : sentence) ids.push_back(bucket(token));
  return embedding_lookup(tape, table_, ids);
}

PrecomputedProvider::PrecomputedProvider(std::string directory, std::size_t dim)
    : directory_(std::move(directory)), dim_(dim) {}

Tensor PrecomputedProvider::lookup(Tape& tape, const Document& doc) {
  (void)tape;  // frozen: never enters the gradient graph
  auto it = cache_.find(doc.doc_key);
  if (it != cache_.end()) return it->second;

  VectorsFile file = read_vectors_file(directory_, doc.doc_key);
  if (file.dimension != dim_) {
    throw FormatError("doc " + doc.doc_key + ": vectors file dimension " +
                      std::to_string(file.dimension) + " does not match provider dimension " +
                      std::to_string(dim_));
  }
  const std::size_t T = doc.token_count();
  std::vector<std::size_t> row_of_token;
  if (file.records.size() == T) {
    row_of_token.resize(T);
    for (std::size_t t = 0; t < T; ++t) row_of_token[t] = t;
  } else if (!doc.pieces.empty()) {
    PieceAlignment alignment = align_document_pieces(doc);
    std::size_t piece_total = 0;
    for (const auto& ps : doc.pieces) piece_total += ps.size();
    if (file.records.size() != piece_total) {
      throw DataError("doc " + doc.doc_key + ": vectors file has " +
                      std::to_string(file.records.size()) + " records for " +
                      std::to_string(piece_total) + " pieces");
    }
    row_of_token = alignment;  // first piece of each token
  } else if (file.records.size() < T) {
    throw DataError("doc " + doc.doc_key + ": no precomputed vector for token " +
                    std::to_string(file.records.size()));
  } else {
    throw DataError("doc " + doc.doc_key + ": vectors file has " +
                    std::to_string(file.records.size()) + " records for " +
                    std::to_string(T) + " tokens");
  }

  Tensor out = Tensor::zeros({T, dim_});
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < dim_; ++j)
      out.at(t, j) = Real(file.records[row_of_token[t]][j]);
  cache_.emplace(doc.doc_key, out);
  return out;
}

CharConvEncoder::CharConvEncoder(ParamStore& store, const std::string& name,
                                 const Vocabulary& vocab, Rng& rng, std::size_t char_dim,
                                 std::vector<std::size_t> windows, std::size_t filters)
    : vocab_(&vocab), windows_(std::move(windows)), filters_(filters) {
  char_table_ = store.table(name + ".chars", vocab.char_count(), char_dim, rng);
  for (std::size_t w : windows_) {
    Bank bank;
    bank.width = w;
    bank.w = store.glorot(name + ".conv" + std::to_string(w) + ".w", w * char_dim, filters, rng);
    bank.b = store.zeros(name + ".conv" + std::to_string(w) + ".b", {filters});
    banks_.push_back(bank);
  }
}

Tensor CharConvEncoder::encode(Tape& tape, const Document& doc) const {
  const std::size_t max_window = *std::max_element(windows_.begin(), windows_.end());
  std::vector<Tensor> token_rows;
  token_rows.reserve(doc.token_count());
  for (const auto& sentence : doc.sentences) {
    for (const std::string& token : sentence) {
      std::vector<std::size_t> ids;
      ids.reserve(std::max(token.size(), max_window));
      for (unsigned char c : token) ids.push_back(vocab_->char_id(c));
      while (ids.size() < max_window) ids.push_back(0);  // pad
      Tensor embs = embedding_lookup(tape, char_table_, ids);
      std::vector<Tensor> pooled;
      pooled.reserve(banks_.size());
      for (const Bank& bank : banks_) {
        Tensor windows = sliding_windows(tape, embs, bank.width);
        Tensor conv = tanh_act(tape, affine(tape, windows, bank.w, bank.b));
        pooled.push_back(max_over_rows(tape, conv));
      }
      token_rows.push_back(concat_cols(tape, pooled));
    }
  }
  return concat_rows(tape, token_rows);
}

Tensor embed_tokens(Tape& tape, const Document& doc,
                    const std::vector<std::shared_ptr<EmbeddingProvider>>& providers,
                    const CharConvEncoder* char_encoder) {
  if (providers.empty() && char_encoder == nullptr) {
    throw ContractError("embed_tokens: at least one embedding source is required");
  }
  std::vector<Tensor> parts;
  for (const auto& provider : providers) parts.push_back(provider->lookup(tape, doc));
  if (char_encoder) parts.push_back(char_encoder->encode(tape, doc));
  return concat_cols(tape, parts);
}

}  // namespace mdet
