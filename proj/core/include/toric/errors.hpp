#pragma once

#include <stdexcept>
#include <string>

namespace toric {

/// Base class for every structured failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class IntegerOverflow : public Error {
 public:
  using Error::Error;
};

class InteriorCoverFailure : public Error {
 public:
  using Error::Error;
};

class InvalidFan : public Error {
 public:
  using Error::Error;
};

class NotABasis : public Error {
 public:
  using Error::Error;
};

class TorsionInPicard : public Error {
 public:
  using Error::Error;
};

class RayNotCovered : public Error {
 public:
  using Error::Error;
};

class NotStabilized : public Error {
 public:
  using Error::Error;
};

class TooManyRays : public Error {
 public:
  using Error::Error;
};

/// A bounded lattice search changed its verdict when the box was enlarged.
class BoxUnstable : public Error {
 public:
  using Error::Error;
};

class TermOutsideCollection : public Error {
 public:
  using Error::Error;
};

class NotPrimitive : public Error {
 public:
  using Error::Error;
};

class ExtraInCollection : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownVariety : public Error {
 public:
  using Error::Error;
};

}  // namespace toric
