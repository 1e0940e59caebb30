#include "mdet/heads.hpp"

#include <cmath>

namespace mdet {

Ffnn::Ffnn(ParamStore& store, const std::string& name, std::size_t input,
           std::size_t hidden, std::size_t layers, std::size_t output, Rng& rng)
    : output_(output) {
  std::size_t in = input;
  for (std::size_t l = 0; l < layers; ++l) {
    ws_.push_back(store.glorot(name + ".h" + std::to_string(l) + ".w", in, hidden, rng));
    bs_.push_back(store.zeros(name + ".h" + std::to_string(l) + ".b", {hidden}));
    in = hidden;
  }
  w_out_ = store.glorot(name + ".out.w", in, output, rng);
  b_out_ = store.zeros(name + ".out.b", {output});
}

Tensor Ffnn::apply(Tape& tape, Tensor x, bool train, Real dropout_rate,
                   Rng& dropout_rng) const {
  Tensor h = x;
  for (std::size_t l = 0; l < ws_.size(); ++l) {
    h = tanh_act(tape, affine(tape, h, ws_[l], bs_[l]));
    h = dropout(tape, h, Real(1) - dropout_rate, train, dropout_rng);
  }
  return affine(tape, h, w_out_, b_out_);
}

BiaffineScorer::BiaffineScorer(ParamStore& store, const std::string& name,
                               std::size_t dim, std::size_t channels, Rng& rng)
    : dim_(dim), channels_(channels) {
  w_ = store.glorot(name + ".w", dim, dim * channels, rng);
  b_ = store.zeros(name + ".b", {dim, channels});
}

std::vector<Tensor> BiaffineScorer::score_matrices(Tape& tape, Tensor h_s,
                                                   Tensor h_e) const {
  if (h_s.dim(1) != dim_ || h_e.dim(1) != dim_) {
    throw ContractError("biaffine: representation dim " + std::to_string(h_s.dim(1)) +
                        "/" + std::to_string(h_e.dim(1)) + " does not match W_m dim " +
                        std::to_string(dim_));
  }
  // start-side bias for every channel at once: [n x C]
  Tensor bias_all = matmul(tape, h_s, b_);
  std::vector<Tensor> out;
  out.reserve(channels_);
  for (std::size_t c = 0; c < channels_; ++c) {
    Tensor w_c = slice_cols(tape, w_, c * dim_, (c + 1) * dim_);
    Tensor left = matmul(tape, h_s, w_c);        // [n x d]
    Tensor scores = matmul_nt(tape, left, h_e);  // [n x n]
    Tensor bias_c = slice_cols(tape, bias_all, c, c + 1);  // [n x 1]
    out.push_back(add_per_row(tape, scores, bias_c));
  }
  return out;
}

std::vector<std::vector<double>> softmax_rows(const std::vector<std::vector<double>>& raw) {
  std::vector<std::vector<double>> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& row = raw[i];
    double mx = row[0];
    for (double v : row) mx = std::max(mx, v);
    double z = 0;
    out[i].resize(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      out[i][j] = std::exp(row[j] - mx);
      z += out[i][j];
    }
    for (double& v : out[i]) v /= z;
  }
  return out;
}

}  // namespace mdet
