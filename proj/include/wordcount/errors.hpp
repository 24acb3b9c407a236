#pragma once

#include <stdexcept>
#include <string>

namespace wordcount {

// Error taxonomy mirrors the CLI exit codes: parse errors exit 2, dimension
// errors exit 3, verification failures exit 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace wordcount
