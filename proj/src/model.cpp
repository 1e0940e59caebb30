#include "mdet/model.hpp"

namespace mdet {

Model::Model(ModelConfig config, Vocabulary vocab)
    : cfg_(std::move(config)), vocab_(std::move(vocab)) {
  cfg_.validate();
  Rng init_rng(cfg_.seed);

  std::size_t dim = 0;
  if (cfg_.use_word_table) {
    providers_.push_back(
        std::make_shared<TrainableLookup>(store_, "embed.words", vocab_, cfg_.word_dim, init_rng));
    dim += cfg_.word_dim;
  }
  if (cfg_.use_hashed) {
    providers_.push_back(std::make_shared<HashedLookup>(
        store_, "embed.hashed", cfg_.hashed_buckets, cfg_.hashed_dim, cfg_.hash_seed, init_rng));
    dim += cfg_.hashed_dim;
  }
  if (cfg_.use_precomputed) {
    providers_.push_back(
        std::make_shared<PrecomputedProvider>(cfg_.vectors_dir, cfg_.precomputed_dim));
    dim += cfg_.precomputed_dim;
  }
  if (cfg_.use_char_cnn) {
    char_encoder_ = std::make_unique<CharConvEncoder>(store_, "embed.char_cnn", vocab_, init_rng);
    dim += char_encoder_->output_dim();
  }

  std::size_t xstar_dim = dim;
  if (cfg_.use_bilstm) {
    bilstm_ = std::make_unique<BiLstm>(store_, "bilstm", dim, cfg_.bilstm_size,
                                       cfg_.bilstm_layers, Real(cfg_.bilstm_dropout), init_rng);
    xstar_dim = bilstm_->output_dim();
  }

  const std::size_t channels = cfg_.channels();
  switch (cfg_.head) {
    case HeadType::lee:
      attention_ffnn_ = std::make_unique<Ffnn>(store_, "lee.attention", xstar_dim,
                                               cfg_.ffnn_size, cfg_.ffnn_layers, 1, init_rng);
      width_ = std::make_unique<WidthFeature>(store_, "lee.width", cfg_.max_span_width,
                                              cfg_.width_feature_dim, init_rng);
      mention_ffnn_ = std::make_unique<Ffnn>(
          store_, "lee.mention", 3 * xstar_dim + cfg_.width_feature_dim, cfg_.ffnn_size,
          cfg_.ffnn_layers, channels, init_rng);
      break;
    case HeadType::concat:
      mention_ffnn_ = std::make_unique<Ffnn>(store_, "concat.mention", 2 * xstar_dim,
                                             cfg_.ffnn_size, cfg_.ffnn_layers, channels,
                                             init_rng);
      break;
    case HeadType::biaffine:
      start_ffnn_ = std::make_unique<Ffnn>(store_, "biaffine.start", xstar_dim, cfg_.ffnn_size,
                                           cfg_.ffnn_layers, cfg_.biaffine_dim, init_rng);
      end_ffnn_ = std::make_unique<Ffnn>(store_, "biaffine.end", xstar_dim, cfg_.ffnn_size,
                                         cfg_.ffnn_layers, cfg_.biaffine_dim, init_rng);
      biaffine_ = std::make_unique<BiaffineScorer>(store_, "biaffine.scorer",
                                                   cfg_.biaffine_dim, channels, init_rng);
      break;
  }
}

Tensor Model::token_representations(Tape& tape, const Document& doc, bool train,
                                    Rng& dropout_rng) {
  Tensor emb = embed_tokens(tape, doc, providers_, char_encoder_.get());
  emb = dropout(tape, emb, Real(1) - Real(cfg_.embedding_dropout), train, dropout_rng);
  if (bilstm_) {
    return bilstm_->encode_document(tape, emb, doc, train, dropout_rng);
  }
  return emb;
}

DocScores Model::score_document(Tape& tape, const Document& doc, bool train,
                                Rng& dropout_rng) {
  DocScores out;
  Tensor xstar = token_representations(tape, doc, train, dropout_rng);
  const Real keep = Real(cfg_.ffnn_dropout);
  const std::size_t channels = cfg_.channels();

  if (cfg_.head == HeadType::biaffine) {
    out.candidates = enumerate_spans(doc, kUnlimitedWidth);
    std::vector<Tensor> per_sentence_logits;
    std::size_t offset = 0;
    for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
      const std::size_t n = doc.sentences[s].size();
      if (n == 0) continue;
      Tensor sent = slice_rows(tape, xstar, offset, offset + n);
      Tensor h_s = start_ffnn_->apply(tape, sent, train, keep, dropout_rng);
      Tensor h_e = end_ffnn_->apply(tape, sent, train, keep, dropout_rng);
      std::vector<Tensor> matrices = biaffine_->score_matrices(tape, h_s, h_e);
      out.sentence_matrices.push_back(matrices[0]);
      // valid (s <= e) cells in candidate enumeration order; cells below the
      // diagonal are never touched, so no gradient reaches them
      std::vector<std::size_t> positions;
      positions.reserve(n * (n + 1) / 2);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) positions.push_back(a * n + b);
      std::vector<Tensor> channel_cols;
      channel_cols.reserve(channels);
      for (Tensor& m : matrices) channel_cols.push_back(gather(tape, m, positions));
      per_sentence_logits.push_back(stack_columns(tape, channel_cols));
      offset += n;
    }
    out.logits = concat_rows(tape, per_sentence_logits);
  } else {
    out.candidates = enumerate_spans(doc, cfg_.max_span_width);
    Tensor reps;
    if (cfg_.head == HeadType::lee) {
      Tensor alpha = attention_ffnn_->apply(tape, xstar, train, keep, dropout_rng);
      reps = lee_representations(tape, xstar, alpha, out.candidates, *width_);
    } else {
      reps = concat_representations(tape, xstar, out.candidates);
    }
    out.logits = mention_ffnn_->apply(tape, reps, train, keep, dropout_rng);
  }

  const std::size_t n = out.candidates.size();
  if (channels == 1) {
    out.mention_probs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.mention_probs[i] = mention_probability(double(out.logits.at(i)));
    }
  } else {
    std::vector<std::vector<double>> raw(n, std::vector<double>(channels));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < channels; ++c) raw[i][c] = double(out.logits.at(i, c));
    out.class_probs = softmax_rows(raw);
  }
  return out;
}

Tensor Model::loss(Tape& tape, const DocScores& scores, const GoldLabeling& labels) const {
  if (cfg_.task == Task::md) {
    return sigmoid_ce_with_logits(tape, scores.logits, labels.binary);
  }
  return softmax_ce_with_logits(tape, scores.logits, labels.classes);
}

GoldLabeling Model::label_for(const DocScores& scores, const Document& doc) const {
  return label_candidates(scores.candidates, doc, cfg_.task == Task::ner, cfg_.labels);
}

}  // namespace mdet
