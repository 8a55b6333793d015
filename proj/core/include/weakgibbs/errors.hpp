#pragma once

#include <stdexcept>
#include <string>

namespace weakgibbs {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad matrices, inadmissible words,
/// unparsable documents, violated measure invariants.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A routine that needs a topologically mixing shift was given one that is not.
class NonMixing : public Error {
 public:
  using Error::Error;
};

/// The potential sequence has no declared dependence length, so exact
/// suprema over cylinders are unavailable.
class InexactSequence : public Error {
 public:
  using Error::Error;
};

/// Eigensolver or root finder did not converge.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// A cylinder measure vanished on an admissible cylinder.
class ZeroMass : public Error {
 public:
  using Error::Error;
};

}  // namespace weakgibbs
