#include "mdet/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mdet {

namespace {

bool want_grad(const Tape& tape, const Tensor& t) {
  return tape.enabled() && t.requires_grad();
}

void finish(Tape& tape, Tensor& out, bool record, std::function<void()> back,
            const char* op) {
  check_finite(out.values(), op);
  if (record) {
    out.set_requires_grad(true);
    tape.record(out, std::move(back));
  }
}

void require_rank2(const Tensor& t, const char* op) {
  if (t.rank() != 2) {
    throw ShapeError(std::string(op) + ": expected a rank-2 tensor, got " +
                     shape_str(t.shape()));
  }
}

}  // namespace

Tensor matmul(Tape& tape, Tensor a, Tensor b) {
  require_rank2(a, "matmul");
  require_rank2(b, "matmul");
  if (a.dim(1) != b.dim(0)) {
    throw ShapeError("matmul: inner extents differ, " + shape_str(a.shape()) +
                     " * " + shape_str(b.shape()));
  }
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor out = Tensor::zeros({m, n});
  const Real* av = a.values().data();
  const Real* bv = b.values().data();
  Real* ov = out.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const Real aip = av[i * k + p];
      const Real* brow = bv + p * n;
      Real* orow = ov + i * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += aip * brow[j];
    }
  }
  bool rec = want_grad(tape, a) || want_grad(tape, b);
  finish(tape, out, rec, [a, b, out, m, k, n]() mutable {
    const Real* g = out.grad().data();
    if (a.requires_grad()) {
      Real* ga = a.grad().data();
      const Real* bv = b.values().data();
      // dA = G * B^T
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Real gij = g[i * n + j];
          for (std::size_t p = 0; p < k; ++p) ga[i * k + p] += gij * bv[p * n + j];
        }
    }
    if (b.requires_grad()) {
      Real* gb = b.grad().data();
      const Real* av = a.values().data();
      // dB = A^T * G
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const Real aip = av[i * k + p];
          const Real* grow = g + i * n;
          Real* gbrow = gb + p * n;
          for (std::size_t j = 0; j < n; ++j) gbrow[j] += aip * grow[j];
        }
    }
  }, "matmul");
  return out;
}

Tensor matmul_nt(Tape& tape, Tensor a, Tensor b) {
  require_rank2(a, "matmul_nt");
  require_rank2(b, "matmul_nt");
  if (a.dim(1) != b.dim(1)) {
    throw ShapeError("matmul_nt: inner extents differ, " + shape_str(a.shape()) +
                     " * " + shape_str(b.shape()) + "^T");
  }
  const std::size_t m = a.dim(0), k = a.dim(1), n = b.dim(0);
  Tensor out = Tensor::zeros({m, n});
  const Real* av = a.values().data();
  const Real* bv = b.values().data();
  Real* ov = out.values().data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Real s = 0;
      const Real* arow = av + i * k;
      const Real* brow = bv + j * k;
      for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
      ov[i * n + j] = s;
    }
  bool rec = want_grad(tape, a) || want_grad(tape, b);
  finish(tape, out, rec, [a, b, out, m, k, n]() mutable {
    const Real* g = out.grad().data();
    if (a.requires_grad()) {
      Real* ga = a.grad().data();
      const Real* bv = b.values().data();
      // dA = G * B
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Real gij = g[i * n + j];
          const Real* brow = bv + j * k;
          Real* garow = ga + i * k;
          for (std::size_t p = 0; p < k; ++p) garow[p] += gij * brow[p];
        }
    }
    if (b.requires_grad()) {
      Real* gb = b.grad().data();
      const Real* av = a.values().data();
      // dB = G^T * A
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Real gij = g[i * n + j];
          const Real* arow = av + i * k;
          Real* gbrow = gb + j * k;
          for (std::size_t p = 0; p < k; ++p) gbrow[p] += gij * arow[p];
        }
    }
  }, "matmul_nt");
  return out;
}

Tensor affine(Tape& tape, Tensor x, Tensor w, Tensor b) {
  require_rank2(x, "affine");
  require_rank2(w, "affine");
  if (x.dim(1) != w.dim(0)) {
    throw ShapeError("affine: input width " + std::to_string(x.dim(1)) +
                     " does not match weight rows " + std::to_string(w.dim(0)));
  }
  if (b.numel() != w.dim(1)) {
    throw ShapeError("affine: bias length " + std::to_string(b.numel()) +
                     " does not match weight cols " + std::to_string(w.dim(1)));
  }
  const std::size_t m = x.dim(0), k = x.dim(1), n = w.dim(1);
  Tensor out = Tensor::zeros({m, n});
  const Real* xv = x.values().data();
  const Real* wv = w.values().data();
  const Real* bv = b.values().data();
  Real* ov = out.values().data();
  for (std::size_t i = 0; i < m; ++i) {
    Real* orow = ov + i * n;
    for (std::size_t j = 0; j < n; ++j) orow[j] = bv[j];
    for (std::size_t p = 0; p < k; ++p) {
      const Real xip = xv[i * k + p];
      const Real* wrow = wv + p * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += xip * wrow[j];
    }
  }
  bool rec = want_grad(tape, x) || want_grad(tape, w) || want_grad(tape, b);
  finish(tape, out, rec, [x, w, b, out, m, k, n]() mutable {
    const Real* g = out.grad().data();
    if (x.requires_grad()) {
      Real* gx = x.grad().data();
      const Real* wv = w.values().data();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const Real gij = g[i * n + j];
          for (std::size_t p = 0; p < k; ++p) gx[i * k + p] += gij * wv[p * n + j];
        }
    }
    if (w.requires_grad()) {
      Real* gw = w.grad().data();
      const Real* xv = x.values().data();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k; ++p) {
          const Real xip = xv[i * k + p];
          const Real* grow = g + i * n;
          Real* gwrow = gw + p * n;
          for (std::size_t j = 0; j < n; ++j) gwrow[j] += xip * grow[j];
        }
    }
    if (b.requires_grad()) {
      Real* gb = b.grad().data();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) gb[j] += g[i * n + j];
    }
  }, "affine");
  return out;
}

static void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shapes differ, " + shape_str(a.shape()) +
                     " vs " + shape_str(b.shape()));
  }
}

Tensor add(Tape& tape, Tensor a, Tensor b) {
  require_same_shape(a, b, "add");
  Tensor out = Tensor::zeros(a.shape());
  const std::size_t n = out.numel();
  for (std::size_t i = 0; i < n; ++i) out.at(i) = a.at(i) + b.at(i);
  bool rec = want_grad(tape, a) || want_grad(tape, b);
  finish(tape, out, rec, [a, b, out, n]() mutable {
    const Real* g = out.grad().data();
    if (a.requires_grad()) {
      Real* ga = a.grad().data();
      for (std::size_t i = 0; i < n; ++i) ga[i] += g[i];
    }
    if (b.requires_grad()) {
      Real* gb = b.grad().data();
      for (std::size_t i = 0; i < n; ++i) gb[i] += g[i];
    }
  }, "add");
  return out;
}

Tensor mul(Tape& tape, Tensor a, Tensor b) {
  require_same_shape(a, b, "mul");
  Tensor out = Tensor::zeros(a.shape());
  const std::size_t n = out.numel();
  for (std::size_t i = 0; i < n; ++i) out.at(i) = a.at(i) * b.at(i);
  bool rec = want_grad(tape, a) || want_grad(tape, b);
  finish(tape, out, rec, [a, b, out, n]() mutable {
    const Real* g = out.grad().data();
    if (a.requires_grad()) {
      Real* ga = a.grad().data();
      const Real* bv = b.values().data();
      for (std::size_t i = 0; i < n; ++i) ga[i] += g[i] * bv[i];
    }
    if (b.requires_grad()) {
      Real* gb = b.grad().data();
      const Real* av = a.values().data();
      for (std::size_t i = 0; i < n; ++i) gb[i] += g[i] * av[i];
    }
  }, "mul");
  return out;
}

Tensor scale(Tape& tape, Tensor x, Real c) {
  Tensor out = Tensor::zeros(x.shape());
  const std::size_t n = out.numel();
  for (std::size_t i = 0; i < n; ++i) out.at(i) = x.at(i) * c;
  finish(tape, out, want_grad(tape, x), [x, out, c, n]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < n; ++i) gx[i] += g[i] * c;
  }, "scale");
  return out;
}

Tensor sigmoid(Tape& tape, Tensor x) {
  Tensor out = Tensor::zeros(x.shape());
  const std::size_t n = out.numel();
  for (std::size_t i = 0; i < n; ++i) {
    const Real v = x.at(i);
    out.at(i) = v >= 0 ? Real(1) / (Real(1) + std::exp(-v))
                       : std::exp(v) / (Real(1) + std::exp(v));
  }
  finish(tape, out, want_grad(tape, x), [x, out, n]() mutable {
    const Real* g = out.grad().data();
    const Real* y = out.values().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < n; ++i) gx[i] += g[i] * y[i] * (Real(1) - y[i]);
  }, "sigmoid");
  return out;
}

Tensor tanh_act(Tape& tape, Tensor x) {
  Tensor out = Tensor::zeros(x.shape());
  const std::size_t n = out.numel();
  for (std::size_t i = 0; i < n; ++i) out.at(i) = std::tanh(x.at(i));
  finish(tape, out, want_grad(tape, x), [x, out, n]() mutable {
    const Real* g = out.grad().data();
    const Real* y = out.values().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < n; ++i) gx[i] += g[i] * (Real(1) - y[i] * y[i]);
  }, "tanh");
  return out;
}

Tensor row_softmax(Tape& tape, Tensor x) {
  require_rank2(x, "row_softmax");
  const std::size_t r = x.dim(0), c = x.dim(1);
  Tensor out = Tensor::zeros({r, c});
  for (std::size_t i = 0; i < r; ++i) {
    Real mx = x.at(i, 0);
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, x.at(i, j));
    Real z = 0;
    for (std::size_t j = 0; j < c; ++j) {
      const Real e = std::exp(x.at(i, j) - mx);
      out.at(i, j) = e;
      z += e;
    }
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) /= z;
  }
  finish(tape, out, want_grad(tape, x), [x, out, r, c]() mutable {
    const Real* g = out.grad().data();
    const Real* y = out.values().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < r; ++i) {
      Real dot = 0;
      for (std::size_t j = 0; j < c; ++j) dot += g[i * c + j] * y[i * c + j];
      for (std::size_t j = 0; j < c; ++j)
        gx[i * c + j] += y[i * c + j] * (g[i * c + j] - dot);
    }
  }, "row_softmax");
  return out;
}

static Tensor apply_mask(Tape& tape, Tensor x, std::vector<Real> mask,
                         const char* op) {
  Tensor out = Tensor::zeros(x.shape());
  const std::size_t n = out.numel();
  for (std::size_t i = 0; i < n; ++i) out.at(i) = x.at(i) * mask[i];
  finish(tape, out, want_grad(tape, x), [x, out, mask = std::move(mask), n]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < n; ++i) gx[i] += g[i] * mask[i];
  }, op);
  return out;
}

Tensor dropout(Tape& tape, Tensor x, Real keep_prob, bool train, Rng& rng) {
  if (!(keep_prob > 0 && keep_prob <= 1)) {
    throw ContractError("dropout: keep probability must be in (0, 1], got " +
                        std::to_string(keep_prob));
  }
  if (!train || keep_prob == Real(1)) return x;
  std::vector<Real> mask(x.numel());
  const Real inv = Real(1) / keep_prob;
  for (Real& m : mask) m = rng.uniform() < keep_prob ? inv : Real(0);
  return apply_mask(tape, x, std::move(mask), "dropout");
}

Tensor variational_dropout(Tape& tape, Tensor x, Real keep_prob, bool train,
                           Rng& rng) {
  if (!(keep_prob > 0 && keep_prob <= 1)) {
    throw ContractError("dropout: keep probability must be in (0, 1], got " +
                        std::to_string(keep_prob));
  }
  if (!train || keep_prob == Real(1)) return x;
  const std::size_t r = x.rows(), c = x.cols();
  std::vector<Real> col_mask(c);
  const Real inv = Real(1) / keep_prob;
  for (Real& m : col_mask) m = rng.uniform() < keep_prob ? inv : Real(0);
  std::vector<Real> mask(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) mask[i * c + j] = col_mask[j];
  return apply_mask(tape, x, std::move(mask), "variational_dropout");
}

Tensor select_rows(Tape& tape, Tensor x, const std::vector<std::size_t>& rows) {
  require_rank2(x, "select_rows");
  const std::size_t r = x.dim(0), c = x.dim(1);
  for (std::size_t id : rows) {
    if (id >= r) {
      throw ShapeError("select_rows: index " + std::to_string(id) +
                       " out of range for " + shape_str(x.shape()));
    }
  }
  if (rows.empty()) throw ShapeError("select_rows: empty index list");
  Tensor out = Tensor::zeros({rows.size(), c});
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = x.at(rows[i], j);
  finish(tape, out, want_grad(tape, x), [x, out, rows, c]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Real* dst = gx + rows[i] * c;
      const Real* src = g + i * c;
      for (std::size_t j = 0; j < c; ++j) dst[j] += src[j];
    }
  }, "select_rows");
  return out;
}

Tensor embedding_lookup(Tape& tape, Tensor table,
                        const std::vector<std::size_t>& ids) {
  return select_rows(tape, table, ids);
}

Tensor concat_cols(Tape& tape, std::vector<Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no inputs");
  const std::size_t r = parts[0].rows();
  std::size_t total = 0;
  bool rec = false;
  for (const Tensor& p : parts) {
    if (p.rows() != r) {
      throw ShapeError("concat_cols: row counts differ, " +
                       std::to_string(p.rows()) + " vs " + std::to_string(r));
    }
    total += p.cols();
    rec = rec || want_grad(tape, p);
  }
  Tensor out = Tensor::zeros({r, total});
  std::size_t off = 0;
  for (const Tensor& p : parts) {
    const std::size_t c = p.cols();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out.at(i, off + j) = p.at(i * c + j);
    off += c;
  }
  finish(tape, out, rec, [parts, out, r, total]() mutable {
    const Real* g = out.grad().data();
    std::size_t off = 0;
    for (Tensor& p : parts) {
      const std::size_t c = p.cols();
      if (p.requires_grad()) {
        Real* gp = p.grad().data();
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < c; ++j) gp[i * c + j] += g[i * total + off + j];
      }
      off += c;
    }
  }, "concat_cols");
  return out;
}

Tensor concat_rows(Tape& tape, std::vector<Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_rows: no inputs");
  const std::size_t c = parts[0].cols();
  std::size_t total = 0;
  bool rec = false;
  for (const Tensor& p : parts) {
    if (p.cols() != c) {
      throw ShapeError("concat_rows: column counts differ, " +
                       std::to_string(p.cols()) + " vs " + std::to_string(c));
    }
    total += p.rows();
    rec = rec || want_grad(tape, p);
  }
  Tensor out = Tensor::zeros({total, c});
  std::size_t off = 0;
  for (const Tensor& p : parts) {
    const std::size_t pr = p.rows();
    for (std::size_t i = 0; i < pr; ++i)
      for (std::size_t j = 0; j < c; ++j) out.at(off + i, j) = p.at(i * c + j);
    off += pr;
  }
  finish(tape, out, rec, [parts, out, c]() mutable {
    const Real* g = out.grad().data();
    std::size_t off = 0;
    for (Tensor& p : parts) {
      const std::size_t pr = p.rows();
      if (p.requires_grad()) {
        Real* gp = p.grad().data();
        for (std::size_t i = 0; i < pr; ++i)
          for (std::size_t j = 0; j < c; ++j) gp[i * c + j] += g[(off + i) * c + j];
      }
      off += pr;
    }
  }, "concat_rows");
  return out;
}

Tensor stack_columns(Tape& tape, std::vector<Tensor> parts) {
  if (parts.empty()) throw ShapeError("stack_columns: no inputs");
  const std::size_t n = parts[0].numel();
  const std::size_t cnum = parts.size();
  bool rec = false;
  for (const Tensor& p : parts) {
    if (p.rank() != 1 || p.numel() != n) {
      throw ShapeError("stack_columns: expected rank-1 inputs of length " +
                       std::to_string(n) + ", got " + shape_str(p.shape()));
    }
    rec = rec || want_grad(tape, p);
  }
  Tensor out = Tensor::zeros({n, cnum});
  for (std::size_t c = 0; c < cnum; ++c)
    for (std::size_t i = 0; i < n; ++i) out.at(i, c) = parts[c].at(i);
  finish(tape, out, rec, [parts, out, n, cnum]() mutable {
    const Real* g = out.grad().data();
    for (std::size_t c = 0; c < cnum; ++c) {
      Tensor& p = parts[c];
      if (!p.requires_grad()) continue;
      Real* gp = p.grad().data();
      for (std::size_t i = 0; i < n; ++i) gp[i] += g[i * cnum + c];
    }
  }, "stack_columns");
  return out;
}

Tensor slice_rows(Tape& tape, Tensor x, std::size_t begin, std::size_t end) {
  require_rank2(x, "slice_rows");
  if (begin >= end || end > x.dim(0)) {
    throw ShapeError("slice_rows: range [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") invalid for " + shape_str(x.shape()));
  }
  const std::size_t c = x.dim(1), r = end - begin;
  Tensor out = Tensor::zeros({r, c});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = x.at(begin + i, j);
  finish(tape, out, want_grad(tape, x), [x, out, begin, r, c]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) gx[(begin + i) * c + j] += g[i * c + j];
  }, "slice_rows");
  return out;
}

Tensor slice_cols(Tape& tape, Tensor x, std::size_t begin, std::size_t end) {
  require_rank2(x, "slice_cols");
  if (begin >= end || end > x.dim(1)) {
    throw ShapeError("slice_cols: range [" + std::to_string(begin) + ", " +
                     std::to_string(end) + ") invalid for " + shape_str(x.shape()));
  }
  const std::size_t r = x.dim(0), c = end - begin, xc = x.dim(1);
  Tensor out = Tensor::zeros({r, c});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = x.at(i, begin + j);
  finish(tape, out, want_grad(tape, x), [x, out, begin, r, c, xc]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) gx[i * xc + begin + j] += g[i * c + j];
  }, "slice_cols");
  return out;
}

Tensor transpose(Tape& tape, Tensor x) {
  require_rank2(x, "transpose");
  const std::size_t r = x.dim(0), c = x.dim(1);
  Tensor out = Tensor::zeros({c, r});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(j, i) = x.at(i, j);
  finish(tape, out, want_grad(tape, x), [x, out, r, c]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) gx[i * c + j] += g[j * r + i];
  }, "transpose");
  return out;
}

Tensor gather(Tape& tape, Tensor x, const std::vector<std::size_t>& positions) {
  if (positions.empty()) throw ShapeError("gather: empty position list");
  for (std::size_t p : positions) {
    if (p >= x.numel()) {
      throw ShapeError("gather: position " + std::to_string(p) +
                       " out of range for " + shape_str(x.shape()));
    }
  }
  Tensor out = Tensor::zeros({positions.size()});
  for (std::size_t i = 0; i < positions.size(); ++i) out.at(i) = x.at(positions[i]);
  finish(tape, out, want_grad(tape, x), [x, out, positions]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < positions.size(); ++i) gx[positions[i]] += g[i];
  }, "gather");
  return out;
}

Tensor add_per_row(Tape& tape, Tensor m, Tensor v) {
  require_rank2(m, "add_per_row");
  if (v.numel() != m.dim(0)) {
    throw ShapeError("add_per_row: vector length " + std::to_string(v.numel()) +
                     " does not match rows of " + shape_str(m.shape()));
  }
  const std::size_t r = m.dim(0), c = m.dim(1);
  Tensor out = Tensor::zeros({r, c});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out.at(i, j) = m.at(i, j) + v.at(i);
  bool rec = want_grad(tape, m) || want_grad(tape, v);
  finish(tape, out, rec, [m, v, out, r, c]() mutable {
    const Real* g = out.grad().data();
    if (m.requires_grad()) {
      Real* gm = m.grad().data();
      for (std::size_t i = 0; i < r * c; ++i) gm[i] += g[i];
    }
    if (v.requires_grad()) {
      Real* gv = v.grad().data();
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) gv[i] += g[i * c + j];
    }
  }, "add_per_row");
  return out;
}

Tensor max_over_rows(Tape& tape, Tensor x) {
  require_rank2(x, "max_over_rows");
  const std::size_t r = x.dim(0), c = x.dim(1);
  Tensor out = Tensor::zeros({c});
  std::vector<std::size_t> argmax(c, 0);
  for (std::size_t j = 0; j < c; ++j) {
    Real best = x.at(0, j);
    for (std::size_t i = 1; i < r; ++i) {
      if (x.at(i, j) > best) {
        best = x.at(i, j);
        argmax[j] = i;
      }
    }
    out.at(j) = best;
  }
  finish(tape, out, want_grad(tape, x), [x, out, argmax = std::move(argmax), c]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t j = 0; j < c; ++j) gx[argmax[j] * c + j] += g[j];
  }, "max_over_rows");
  return out;
}

Tensor sliding_windows(Tape& tape, Tensor x, std::size_t w) {
  require_rank2(x, "sliding_windows");
  const std::size_t r = x.dim(0), c = x.dim(1);
  if (w == 0 || w > r) {
    throw ShapeError("sliding_windows: window " + std::to_string(w) +
                     " invalid for " + shape_str(x.shape()));
  }
  const std::size_t n = r - w + 1;
  Tensor out = Tensor::zeros({n, w * c});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < w; ++k)
      for (std::size_t j = 0; j < c; ++j) out.at(i, k * c + j) = x.at(i + k, j);
  finish(tape, out, want_grad(tape, x), [x, out, n, w, c]() mutable {
    const Real* g = out.grad().data();
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < w; ++k)
        for (std::size_t j = 0; j < c; ++j)
          gx[(i + k) * c + j] += g[i * (w * c) + k * c + j];
  }, "sliding_windows");
  return out;
}

Tensor sum_all(Tape& tape, Tensor x) {
  Real s = 0;
  for (std::size_t i = 0; i < x.numel(); ++i) s += x.at(i);
  Tensor out = Tensor::scalar(s);
  finish(tape, out, want_grad(tape, x), [x, out]() mutable {
    const Real g = out.grad()[0];
    Real* gx = x.grad().data();
    for (std::size_t i = 0; i < x.numel(); ++i) gx[i] += g;
  }, "sum_all");
  return out;
}

Tensor sigmoid_ce_with_logits(Tape& tape, Tensor logits,
                              const std::vector<Real>& targets) {
  if (logits.numel() != targets.size()) {
    throw ContractError("sigmoid_ce: " + std::to_string(logits.numel()) +
                        " logits vs " + std::to_string(targets.size()) + " labels");
  }
  Real loss = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Real x = logits.at(i), y = targets[i];
    loss += std::max(x, Real(0)) - x * y + std::log1p(std::exp(-std::abs(x)));
  }
  Tensor out = Tensor::scalar(loss);
  finish(tape, out, want_grad(tape, logits), [logits, out, targets]() mutable {
    const Real g = out.grad()[0];
    Real* gx = logits.grad().data();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Real x = logits.at(i);
      const Real p = x >= 0 ? Real(1) / (Real(1) + std::exp(-x))
                            : std::exp(x) / (Real(1) + std::exp(x));
      gx[i] += g * (p - targets[i]);
    }
  }, "sigmoid_ce_with_logits");
  return out;
}

Tensor softmax_ce_with_logits(Tape& tape, Tensor logits,
                              const std::vector<std::size_t>& gold_class) {
  require_rank2(logits, "softmax_ce");
  const std::size_t n = logits.dim(0), c = logits.dim(1);
  if (gold_class.size() != n) {
    throw ContractError("softmax_ce: " + std::to_string(n) + " rows vs " +
                        std::to_string(gold_class.size()) + " labels");
  }
  for (std::size_t cls : gold_class) {
    if (cls >= c) {
      throw ContractError("softmax_ce: gold class " + std::to_string(cls) +
                          " out of range for " + std::to_string(c) + " classes");
    }
  }
  Real loss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Real mx = logits.at(i, 0);
    for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, logits.at(i, j));
    Real z = 0;
    for (std::size_t j = 0; j < c; ++j) z += std::exp(logits.at(i, j) - mx);
    loss += mx + std::log(z) - logits.at(i, gold_class[i]);
  }
  Tensor out = Tensor::scalar(loss);
  finish(tape, out, want_grad(tape, logits), [logits, out, gold_class, n, c]() mutable {
    const Real g = out.grad()[0];
    Real* gx = logits.grad().data();
    for (std::size_t i = 0; i < n; ++i) {
      Real mx = logits.at(i, 0);
      for (std::size_t j = 1; j < c; ++j) mx = std::max(mx, logits.at(i, j));
      Real z = 0;
      for (std::size_t j = 0; j < c; ++j) z += std::exp(logits.at(i, j) - mx);
      for (std::size_t j = 0; j < c; ++j) {
        const Real p = std::exp(logits.at(i, j) - mx) / z;
        gx[i * c + j] += g * (p - (j == gold_class[i] ? Real(1) : Real(0)));
      }
    }
  }, "softmax_ce_with_logits");
  return out;
}

}  // namespace mdet
