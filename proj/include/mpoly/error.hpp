#pragma once

#include <stdexcept>
#include <string>

namespace mpoly {

// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch, out-of-range leg, invalid construction parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Marginals and spectra are undefined for the zero tensor.
class ZeroTensorError : public Error {
 public:
  ZeroTensorError() : Error("operation undefined on the zero tensor") {}
  explicit ZeroTensorError(const std::string& what) : Error(what) {}
};

// Non-Hermitian input, negative spectrum, or an invariant broken mid-run.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed tensor / point JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpoly
