#pragma once

#include <stdexcept>
#include <string>

namespace mdet {

// Error taxonomy shared by every module. Each carries a human-readable
// message that names the offending operation / file / index.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor shapes do not conform to an operation.
struct ShapeError : Error {
  using Error::Error;
};

// A forward or backward pass produced NaN/Inf.
struct NumericError : Error {
  using Error::Error;
};

// An API precondition was violated (non-scalar loss, missing grad, ...).
struct ContractError : Error {
  using Error::Error;
};

// Corpus / input data violates a document invariant.
struct DataError : Error {
  using Error::Error;
};

// A file does not match its declared on-disk format.
struct FormatError : Error {
  using Error::Error;
};

// Sub-word pieces do not reconstruct the token sequence.
struct AlignmentError : Error {
  using Error::Error;
};

// Bad command-line or config usage.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace mdet
