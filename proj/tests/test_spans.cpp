#include <doctest.h>

#include <set>

#include "mdet/gradcheck.hpp"
#include "mdet/rng.hpp"
#include "mdet/spans.hpp"

using namespace mdet;

namespace {

Document doc_with_sentence_lengths(const std::vector<std::size_t>& lengths) {
  Document doc;
  doc.doc_key = "spans";
  for (std::size_t n : lengths) doc.sentences.emplace_back(n, "w");
  return doc;
}

// brute force over all index pairs, filtered; the enumeration oracle
std::set<std::pair<std::size_t, std::size_t>> brute_force_spans(
    const Document& doc, std::size_t max_width) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const std::size_t T = doc.token_count();
  for (std::size_t s = 0; s < T; ++s) {
    for (std::size_t e = s; e < T; ++e) {
      if (e - s >= max_width) continue;
      if (doc.sentence_of(s) != doc.sentence_of(e)) continue;
      out.insert({s, e});
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("spans") {

TEST_CASE("length-4 sentence with width cap 2 yields the seven known spans") {
  Document doc = doc_with_sentence_lengths({4});
  auto spans = enumerate_spans(doc, 2);
  REQUIRE(spans.size() == 7);
  const std::vector<std::pair<std::size_t, std::size_t>> expected = {
      {0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(spans[i].span.start == expected[i].first);
    CHECK(spans[i].span.end == expected[i].second);
  }
}

TEST_CASE("unbounded width gives n(n+1)/2 spans per sentence") {
  Document doc = doc_with_sentence_lengths({6});
  CHECK(enumerate_spans(doc, kUnlimitedWidth).size() == 21);
  CHECK(enumerate_spans(doc, 100).size() == 21);
}

TEST_CASE("width one gives exactly the singletons") {
  Document doc = doc_with_sentence_lengths({5, 3});
  auto spans = enumerate_spans(doc, 1);
  REQUIRE(spans.size() == 8);
  for (const auto& c : spans) CHECK(c.span.start == c.span.end);
}

TEST_CASE("enumeration equals the brute-force set on random documents") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> lengths;
    std::size_t total = 0;
    while (total < 5 + rng.index(45)) {
      const std::size_t n = 1 + rng.index(12);
      lengths.push_back(n);
      total += n;
    }
    Document doc = doc_with_sentence_lengths(lengths);
    const std::size_t max_width = std::vector<std::size_t>{1, 3, 10}[rng.index(3)];
    auto spans = enumerate_spans(doc, max_width);
    std::set<std::pair<std::size_t, std::size_t>> got;
    for (const auto& c : spans) {
      CHECK(doc.sentence_of(c.span.start) == c.sentence);
      got.insert({c.span.start, c.span.end});
    }
    CHECK(got.size() == spans.size());
    CHECK(got == brute_force_spans(doc, max_width));
  }
}

TEST_CASE("width-1 span attention returns that token exactly") {
  Tape tape;
  Tensor xstar = Tensor::from({3, 2}, {1, 2, 3, 4, 5, 6});
  Tensor alpha = Tensor::from({3, 1}, {0.3, -2.0, 0.7});
  Tensor h = attention_head(tape, alpha, xstar, Span{1, 1});
  CHECK(h.at(0, 0) == 3.0);
  CHECK(h.at(0, 1) == 4.0);
}

TEST_CASE("equal logits average the span vectors") {
  Tape tape;
  Tensor xstar = Tensor::from({2, 2}, {1, 2, 3, 4});
  Tensor alpha = Tensor::from({2, 1}, {0.42, 0.42});
  Tensor h = attention_head(tape, alpha, xstar, Span{0, 1});
  CHECK(h.at(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(h.at(0, 1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("logits ln1, ln2, ln1 weight the middle token by one half") {
  Tape tape;
  Tensor xstar = Tensor::from({3, 1}, {1, 10, 100});
  Tensor alpha = Tensor::from({3, 1}, {std::log(1.0), std::log(2.0), std::log(1.0)});
  Tensor h = attention_head(tape, alpha, xstar, Span{0, 2});
  // weights 0.25, 0.5, 0.25
  CHECK(h.at(0, 0) == doctest::Approx(0.25 * 1 + 0.5 * 10 + 0.25 * 100).epsilon(1e-12));
}

TEST_CASE("attention output stays in the convex hull of span vectors") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(6), d = 1 + rng.index(4);
    Tensor xstar = Tensor::zeros({n, d});
    Tensor alpha = Tensor::zeros({n, 1});
    for (Real& v : xstar.values()) v = rng.uniform(-2, 2);
    for (Real& v : alpha.values()) v = rng.uniform(-3, 3);
    Tape tape;
    Tensor h = attention_head(tape, alpha, xstar, Span{0, n - 1});
    for (std::size_t j = 0; j < d; ++j) {
      Real lo = xstar.at(0, j), hi = xstar.at(0, j);
      for (std::size_t t = 1; t < n; ++t) {
        lo = std::min(lo, xstar.at(t, j));
        hi = std::max(hi, xstar.at(t, j));
      }
      CHECK(h.at(0, j) >= lo - 1e-12);
      CHECK(h.at(0, j) <= hi + 1e-12);
    }
  }
}

TEST_CASE("lee representation dimensions follow 3d + width") {
  Rng rng(31);
  ParamStore store;
  WidthFeature width(store, "width", 5, 20, rng);
  Document doc = doc_with_sentence_lengths({4});
  auto candidates = enumerate_spans(doc, 2);
  Tensor xstar = Tensor::zeros({4, 400});
  Tensor alpha = Tensor::zeros({4, 1});
  Tape tape;
  Tensor reps = lee_representations(tape, xstar, alpha, candidates, width);
  CHECK(reps.shape() == std::vector<std::size_t>{7, 3 * 400 + 20});
}

TEST_CASE("width-1 spans repeat the token vector in all three segments") {
  Rng rng(33);
  ParamStore store;
  WidthFeature width(store, "width", 3, 4, rng);
  Document doc = doc_with_sentence_lengths({2});
  auto candidates = enumerate_spans(doc, 1);
  Tensor xstar = Tensor::from({2, 2}, {1, 2, 3, 4});
  Tensor alpha = Tensor::from({2, 1}, {0.5, -0.5});
  Tape tape;
  Tensor reps = lee_representations(tape, xstar, alpha, candidates, width);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(reps.at(i, j) == reps.at(i, 2 + j));
      CHECK(reps.at(i, j) == doctest::Approx(reps.at(i, 4 + j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("equal widths share the identical feature segment") {
  Rng rng(35);
  ParamStore store;
  WidthFeature width(store, "width", 4, 6, rng);
  Document doc = doc_with_sentence_lengths({4});
  auto candidates = enumerate_spans(doc, 2);
  Tensor xstar = Tensor::zeros({4, 3});
  Tensor alpha = Tensor::zeros({4, 1});
  Tape tape;
  Tensor reps = lee_representations(tape, xstar, alpha, candidates, width);
  // candidates 1 and 3 are both width-2 spans
  for (std::size_t j = 0; j < 6; ++j)
    CHECK(reps.at(1, 9 + j) == reps.at(3, 9 + j));
}

TEST_CASE("width outside the table range is a contract error") {
  Rng rng(37);
  ParamStore store;
  WidthFeature width(store, "width", 2, 4, rng);
  Tape tape;
  CHECK_THROWS_AS(width.rows(tape, {3}), ContractError);
  CHECK_THROWS_AS(width.rows(tape, {0}), ContractError);
}

TEST_CASE("concat representation doubles the vector width") {
  Document doc = doc_with_sentence_lengths({3});
  auto candidates = enumerate_spans(doc, 2);
  Tensor xstar = Tensor::zeros({3, 768});
  Tape tape;
  Tensor reps = concat_representations(tape, xstar, candidates);
  CHECK(reps.shape() == std::vector<std::size_t>{candidates.size(), 1536});
}

TEST_CASE("width-1 concat halves are identical and swaps follow tokens") {
  Document doc = doc_with_sentence_lengths({2});
  auto candidates = enumerate_spans(doc, 2);  // (0,0), (0,1), (1,1)
  Tensor xstar = Tensor::from({2, 2}, {1, 2, 3, 4});
  Tape tape;
  Tensor reps = concat_representations(tape, xstar, candidates);
  CHECK(reps.at(0, 0) == reps.at(0, 2));
  CHECK(reps.at(0, 1) == reps.at(0, 3));
  // swap the two token vectors: span (0,1) halves swap accordingly
  Tensor swapped = Tensor::from({2, 2}, {3, 4, 1, 2});
  Tensor reps2 = concat_representations(tape, swapped, candidates);
  CHECK(reps2.at(1, 0) == reps.at(1, 2));
  CHECK(reps2.at(1, 2) == reps.at(1, 0));
}

TEST_CASE("attention weights differentiate cleanly") {
  Rng rng(39);
  ParamStore store;
  Tensor xstar = store.glorot("xstar", 5, 3, rng);
  Tensor alpha = store.glorot("alpha", 5, 1, rng);
  auto report = grad_check(store.entries(), [&](Tape& t) {
    Tensor h1 = attention_head(t, alpha, xstar, Span{0, 2});
    Tensor h2 = attention_head(t, alpha, xstar, Span{2, 4});
    return sum_all(t, mul(t, h1, h2));
  });
  CHECK(report.all_pass);
}

}  // TEST_SUITE
