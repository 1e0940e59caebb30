#include <doctest.h>

#include "mdet/ops.hpp"
#include "mdet/tensor.hpp"

using namespace mdet;

TEST_SUITE("tensor") {

TEST_CASE("shape product matches stored value count") {
  Tensor t = Tensor::zeros({2, 3});
  CHECK(t.numel() == 6);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
  CHECK_THROWS_AS(Tensor::from({2, 2}, {1, 2, 3}), ShapeError);
  CHECK_THROWS_AS(Tensor::zeros({0, 3}), ShapeError);
  CHECK_THROWS_AS(Tensor::zeros({1, 2, 3}), ShapeError);
}

TEST_CASE("grad allocates lazily with identical shape") {
  Tensor t = Tensor::zeros({3, 2}, true);
  CHECK(!t.has_grad());
  t.grad()[5] = 1.0;
  CHECK(t.has_grad());
  CHECK(t.grad().size() == t.numel());
  t.zero_grad();
  CHECK(t.grad()[5] == 0.0);
}

TEST_CASE("copies alias storage") {
  Tensor a = Tensor::zeros({2});
  Tensor b = a;
  b.at(0) = 7.0;
  CHECK(a.at(0) == 7.0);
  CHECK(a.id() == b.id());
}

TEST_CASE("scalar accessor rejects non-scalars") {
  CHECK(Tensor::scalar(4.5).value() == 4.5);
  CHECK_THROWS_AS(Tensor::zeros({2}).value(), ContractError);
}

TEST_CASE("non-finite forward output raises numeric error") {
  Tape tape;
  Tensor big = Tensor::from({1, 1}, {1e308}, true);
  Tensor w = Tensor::from({1, 1}, {1e308}, true);
  CHECK_THROWS_AS(matmul(tape, big, w), NumericError);
}

TEST_CASE("backward requires scalar loss") {
  Tape tape;
  Tensor x = Tensor::from({2}, {1.0, 2.0}, true);
  Tensor y = sigmoid(tape, x);
  CHECK_THROWS_AS(tape.backward(y), ContractError);
}

}  // TEST_SUITE
