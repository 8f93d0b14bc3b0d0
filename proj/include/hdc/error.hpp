#pragma once

#include <stdexcept>
#include <string>

namespace hdc {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid VsaConfig (non-square VTB dimension, bad density, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Payload/kind/dimension mismatch between operands.
class TypeError : public Error {
 public:
  using Error::Error;
};

// Out-of-range or empty arguments.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the requested architecture.
class UnsupportedOperationError : public Error {
 public:
  using Error::Error;
};

// Object is in a state that cannot serve the request (e.g. empty memory).
class StateError : public Error {
 public:
  using Error::Error;
};

// Malformed or unreadable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Text that cannot be encoded (unknown character, empty n-gram stream).
class EncodingError : public Error {
 public:
  using Error::Error;
};

}  // namespace hdc
