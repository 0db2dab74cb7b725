#pragma once

#include <stdexcept>
#include <string>

namespace recaut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation (matrix product, block sizes, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A word contains a symbol outside the model's alphabet.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

/// A model violates one of its semantic invariants (stochasticity, trace, ...).
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// The requested conversion is not defined for the given input.
class ConversionError : public Error {
 public:
  using Error::Error;
};

/// A decision problem is ill-posed for its target (relation/kind mismatch,
/// cutpoint outside [0, 1] for a stochastic or quantum model, ...).
class InvalidProblemError : public Error {
 public:
  using Error::Error;
};

/// A serialized model or rational literal could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace recaut
