#pragma once

#include <stdexcept>
#include <string>

namespace metric_forge {

// Base of every error the library throws. The CLI maps all of these to exit
// code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument outside the operation's domain (nonpositive epsilon, empty
// subset, mismatched point lists, malformed rational, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Matrix is not square or does not match its label list.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A stated precondition of a construction does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A transform descriptor outside the supported symbolic family.
class UnsupportedTransform : public Error {
 public:
  using Error::Error;
};

// The embedding search refuses inputs above its size cap. Distinct from a
// "no embedding" verdict, which is always exhaustive.
class RefusalError : public Error {
 public:
  using Error::Error;
};

}  // namespace metric_forge
