// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace rsm {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class InsufficientDof : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidWeights : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Sphere-constrained minimizer is not unique (trust-region hard case or a
/// flat direction); the sensitivity theory does not apply.
class NonUniqueMinimizer : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class SingularBorder : public Error {
 public:
  using Error::Error;
};

/// Multiplier vanishes on an active boundary; the critical-point Jacobian
/// is undefined there.
class DegenerateComplementarity : public Error {
 public:
  using Error::Error;
};

class StepTooSmall : public Error {
 public:
  using Error::Error;
};

class OrderingMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

class TruthDegenerate : public Error {
 public:
  using Error::Error;
};

class TooFewReplicates : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV or config input; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = 0) : Error(what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace rsm
