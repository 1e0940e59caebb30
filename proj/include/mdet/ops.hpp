#pragma once

#include <vector>

#include "mdet/rng.hpp"
#include "mdet/tensor.hpp"

namespace mdet {

// Differentiable operations. Every op validates shapes (ShapeError), checks
// its output for NaN/Inf (NumericError) and, when the tape is enabled and
// any input requires gradients, records a closure computing exact analytic
// gradients of all inputs.

// [m x k] * [k x n] -> [m x n]
Tensor matmul(Tape& tape, Tensor a, Tensor b);
// a * b^T : [m x k] * [n x k] -> [m x n]
Tensor matmul_nt(Tape& tape, Tensor a, Tensor b);
// rows of x through x*w + b : [m x k], [k x n], [n] -> [m x n]
Tensor affine(Tape& tape, Tensor x, Tensor w, Tensor b);

Tensor add(Tape& tape, Tensor a, Tensor b);
Tensor mul(Tape& tape, Tensor a, Tensor b);  // elementwise
Tensor scale(Tape& tape, Tensor x, Real c);

Tensor sigmoid(Tape& tape, Tensor x);
Tensor tanh_act(Tape& tape, Tensor x);

// softmax of each row, log-sum-exp shifted; rows sum to 1
Tensor row_softmax(Tape& tape, Tensor x);

// inverted dropout: train -> elementwise mask {0, 1/keep}; eval -> identity.
// keep_prob 1.0 is the identity in both modes.
Tensor dropout(Tape& tape, Tensor x, Real keep_prob, bool train, Rng& rng);
// variational variant: one mask over columns, shared by every row
Tensor variational_dropout(Tape& tape, Tensor x, Real keep_prob, bool train, Rng& rng);

// out row i = x row rows[i]; gradient scatter-adds back (duplicates allowed)
Tensor select_rows(Tape& tape, Tensor x, const std::vector<std::size_t>& rows);
// trainable-table lookup; identical semantics to select_rows
Tensor embedding_lookup(Tape& tape, Tensor table, const std::vector<std::size_t>& ids);

Tensor concat_cols(Tape& tape, std::vector<Tensor> parts);  // same rows
Tensor concat_rows(Tape& tape, std::vector<Tensor> parts);  // same cols
// rank-1 columns of equal length n -> [n x parts]
Tensor stack_columns(Tape& tape, std::vector<Tensor> parts);

// row / column ranges are half-open [begin, end)
Tensor slice_rows(Tape& tape, Tensor x, std::size_t begin, std::size_t end);
Tensor slice_cols(Tape& tape, Tensor x, std::size_t begin, std::size_t end);

Tensor transpose(Tape& tape, Tensor x);

// pick flat positions out of x (row-major) -> rank-1 [k]
Tensor gather(Tape& tape, Tensor x, const std::vector<std::size_t>& positions);

// out[i][j] = m[i][j] + v[i]  (v broadcast across each row)
Tensor add_per_row(Tape& tape, Tensor m, Tensor v);

// column-wise max over rows -> rank-1 [cols] (max-over-time pooling)
Tensor max_over_rows(Tape& tape, Tensor x);

// sliding windows of w consecutive rows, flattened: [r x c] -> [r-w+1 x w*c]
Tensor sliding_windows(Tape& tape, Tensor x, std::size_t w);

Tensor sum_all(Tape& tape, Tensor x);  // -> scalar

// Numerically stable losses computed from logits (never from saturated
// probabilities). Both sum over all entries.
//   sigmoid CE:  sum_i  max(x,0) - x*y + log(1 + exp(-|x|)),  y in {0,1}
//   softmax CE:  sum_i  logsumexp(row_i) - row_i[gold_i]
Tensor sigmoid_ce_with_logits(Tape& tape, Tensor logits,
                              const std::vector<Real>& targets);
Tensor softmax_ce_with_logits(Tape& tape, Tensor logits,
                              const std::vector<std::size_t>& gold_class);

}  // namespace mdet
