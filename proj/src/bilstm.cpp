#include "mdet/bilstm.hpp"

#include <iostream>

namespace mdet {

BiLstm::BiLstm(ParamStore& store, const std::string& name, std::size_t input_dim,
               std::size_t hidden, std::size_t layers, Real dropout_rate, Rng& rng)
    : input_dim_(input_dim), hidden_(hidden), dropout_rate_(dropout_rate) {
  std::size_t in = input_dim;
  for (std::size_t l = 0; l < layers; ++l) {
    Layer layer;
    const std::string base = name + ".layer" + std::to_string(l);
    layer.fw.w = store.glorot(base + ".fw.w", in + hidden, 4 * hidden, rng);
    layer.fw.b = store.zeros(base + ".fw.b", {4 * hidden});
    layer.bw.w = store.glorot(base + ".bw.w", in + hidden, 4 * hidden, rng);
    layer.bw.b = store.zeros(base + ".bw.b", {4 * hidden});
    layers_.push_back(layer);
    in = 2 * hidden;
  }
}

BiLstm::BiLstm(std::vector<Layer> layers, std::size_t input_dim, std::size_t hidden,
               Real dropout_rate)
    : layers_(std::move(layers)), input_dim_(input_dim), hidden_(hidden),
      dropout_rate_(dropout_rate) {}

Tensor BiLstm::run_direction(Tape& tape, const Tensor& x, const Direction& dir,
                             bool backward) const {
  const std::size_t n = x.dim(0);
  const std::size_t H = hidden_;
  Tensor h = Tensor::zeros({1, H});
  Tensor c = Tensor::zeros({1, H});
  std::vector<Tensor> states(n);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t t = backward ? n - 1 - step : step;
    Tensor x_t = slice_rows(tape, x, t, t + 1);
    Tensor xh = concat_cols(tape, {x_t, h});
    Tensor pre = affine(tape, xh, dir.w, dir.b);
    Tensor i_gate = sigmoid(tape, slice_cols(tape, pre, 0, H));
    Tensor f_gate = sigmoid(tape, slice_cols(tape, pre, H, 2 * H));
    Tensor g_gate = tanh_act(tape, slice_cols(tape, pre, 2 * H, 3 * H));
    Tensor o_gate = sigmoid(tape, slice_cols(tape, pre, 3 * H, 4 * H));
    c = add(tape, mul(tape, f_gate, c), mul(tape, i_gate, g_gate));
    h = mul(tape, o_gate, tanh_act(tape, c));
    states[t] = h;
  }
  return concat_rows(tape, states);
}

Tensor BiLstm::encode_sentence(Tape& tape, Tensor x, bool train, Rng& dropout_rng) const {
  if (x.dim(1) != input_dim_) {
    throw ShapeError("bilstm: input dim " + std::to_string(x.dim(1)) +
                     " does not match configured " + std::to_string(input_dim_));
  }
  Tensor current = x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (l > 0) {
      current = variational_dropout(tape, current, Real(1) - dropout_rate_, train,
                                    dropout_rng);
    }
    Tensor fw = run_direction(tape, current, layers_[l].fw, false);
    Tensor bw = run_direction(tape, current, layers_[l].bw, true);
    current = concat_cols(tape, {fw, bw});
  }
  return current;
}

Tensor BiLstm::encode_document(Tape& tape, Tensor token_vectors, const Document& doc,
                               bool train, Rng& dropout_rng) const {
  std::vector<Tensor> outputs;
  std::size_t offset = 0;
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    const std::size_t n = doc.sentences[s].size();
    if (n == 0) {
      std::cerr << "warning: doc " << doc.doc_key << ": skipping empty sentence "
                << s << "\n";
      continue;
    }
    Tensor sent = slice_rows(tape, token_vectors, offset, offset + n);
    outputs.push_back(encode_sentence(tape, sent, train, dropout_rng));
    offset += n;
  }
  if (outputs.empty()) {
    throw ContractError("doc " + doc.doc_key + " has no non-empty sentences");
  }
  return concat_rows(tape, outputs);
}

}  // namespace mdet
