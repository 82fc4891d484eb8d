#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace krein {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was not met by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: scenario schema violations, expression syntax, I/O.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The mathematical hypotheses of the bifurcation analysis do not hold for
/// the supplied data (degenerate numerator, semisimple eigenvalue, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// matrix_core

class DegeneratePolynomialError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// ---------------------------------------------------------------------------
// expr

class ParseError : public InputError {
 public:
  ParseError(std::string message, std::size_t offset,
             std::vector<std::string> expected = {})
      : InputError(message + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(std::string name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset),
        name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation left the real domain (division by zero, sqrt of a negative,
/// non-finite result). `offset` locates the offending subexpression.
class DomainError : public Error {
 public:
  DomainError(std::string message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// DomainError raised while evaluating entry (row, col) of a matrix curve.
class EntryDomainError : public DomainError {
 public:
  EntryDomainError(const DomainError& cause, int row, int col, double t, double eps)
      : DomainError(cause),
        row_(row),
        col_(col),
        t_(t),
        eps_(eps),
        what_("entry (" + std::to_string(row) + "," + std::to_string(col) +
              ") at t=" + std::to_string(t) + ", eps=" + std::to_string(eps) +
              ": " + cause.what()) {}

  const char* what() const noexcept override { return what_.c_str(); }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }
  double t() const noexcept { return t_; }
  double eps() const noexcept { return eps_; }

 private:
  int row_;
  int col_;
  double t_;
  double eps_;
  std::string what_;
};

class SymmetryConflictError : public InputError {
 public:
  using InputError::InputError;
};

// ---------------------------------------------------------------------------
// flow

class NonSymplecticError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CorruptedSolutionError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// spectral

class DegenerateAngleError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Geometric multiplicity of the double eigenvalue exceeds one.
class NotJordanBlockError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class InconsistentChainError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

class DegeneratePairingError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

/// No double eigenvalue on the unit circle away from +-1 was found.
class NoDoubleEigenvalueError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

// ---------------------------------------------------------------------------
// bifurcation

/// lambda0 too close to +-1, where c2(0) vanishes.
class ExcludedCaseError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

/// The nondegeneracy numerator <A eta1, eta1> vanishes.
class DegenerateCaseError : public HypothesisError {
 public:
  DegenerateCaseError(std::string message, double measured)
      : HypothesisError(std::move(message)), measured_(measured) {}

  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

class InconclusiveError : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};

// ---------------------------------------------------------------------------
// verify

class TrackingAmbiguityError : public HypothesisError {
 public:
  TrackingAmbiguityError(std::string message, double parameter)
      : HypothesisError(message + " (s=" + std::to_string(parameter) + ")"),
        parameter_(parameter) {}

  double parameter() const noexcept { return parameter_; }

 private:
  double parameter_;
};

class IllConditionedFitError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// scenario

/// Scenario schema violation; `pointer` is a JSON pointer to the bad node.
class SchemaError : public InputError {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : InputError(pointer + ": " + message), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace krein
