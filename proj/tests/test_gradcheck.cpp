#include <doctest.h>

#include "mdet/gradcheck.hpp"
#include "mdet/ops.hpp"
#include "mdet/params.hpp"
#include "mdet/rng.hpp"

using namespace mdet;

TEST_SUITE("gradcheck") {

TEST_CASE("identity model has vanishing relative error") {
  Tensor w = Tensor::from({1}, {0.7}, true);
  auto report = grad_check({{"w", w}}, [&](Tape& t) { return sum_all(t, w); });
  REQUIRE(report.entries.size() == 1);
  CHECK(report.all_pass);
  CHECK(report.entries[0].max_rel_err <= 1e-8);
}

TEST_CASE("reports per-parameter results and catches a broken gradient") {
  Rng rng(4);
  ParamStore store;
  Tensor w = store.glorot("w", 3, 2, rng);
  Tensor b = store.zeros("b", {2});
  Tensor x = Tensor::zeros({2, 3});
  for (Real& v : x.values()) v = rng.uniform(-1, 1);

  auto good = grad_check(store.entries(), [&](Tape& t) {
    return sum_all(t, tanh_act(t, affine(t, x, w, b)));
  });
  CHECK(good.all_pass);
  CHECK(good.entries.size() == 2);

  auto broken = grad_check({{"w", w}}, [&](Tape& t) {
    // value depends on w twice but only one path is on the tape
    Tensor frozen = Tensor::from(w.shape(), w.values());
    return sum_all(t, mul(t, affine(t, x, w, b), affine(t, x, frozen, b)));
  });
  CHECK(!broken.all_pass);
}

}  // TEST_SUITE
