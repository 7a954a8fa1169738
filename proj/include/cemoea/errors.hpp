#pragma once

#include <stdexcept>
#include <string>

namespace cemoea {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: bad token, non-numeric id, wrong column count.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a structural rule (self-loop, duplicate
/// edge, row-count mismatch, attribute kind mismatch, bad parameter).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cemoea
