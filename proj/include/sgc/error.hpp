#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

// Base class for every error raised by the library. Callers that only care
// about success/failure catch this; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};
class TooLarge : public Error {
 public:
  using Error::Error;
};
class DivisionByZero : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class Unsolvable : public Error {
 public:
  using Error::Error;
};
class Singular : public Error {
 public:
  using Error::Error;
};
class InvalidParams : public Error {
 public:
  using Error::Error;
};
class Infeasible : public Error {
 public:
  using Error::Error;
};
class ConstructionFailed : public Error {
 public:
  using Error::Error;
};
class BadLength : public Error {
 public:
  using Error::Error;
};
class WrongSubsetSize : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgc
