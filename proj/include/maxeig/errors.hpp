#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxeig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (non-finite entry, non-positive rate, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A linear solve hit a pivot below the absolute breakdown threshold.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Tridiagonal elimination broke down; the shift sits on an eigenvalue.
class BreakdownError : public SingularError {
 public:
  using SingularError::SingularError;
};

/// The explicit tridiagonal representation has a vanishing denominator.
class DenominatorBreakdown : public SingularError {
 public:
  using SingularError::SingularError;
};

/// One of the constructed sequences (r, h, phi, mu) lost positivity.
class NonPositiveSequence : public Error {
 public:
  NonPositiveSequence(std::string sequence, std::size_t index)
      : Error("sequence '" + sequence + "' is not positive at index " + std::to_string(index)),
        sequence_(std::move(sequence)),
        index_(index) {}

  const std::string& sequence() const { return sequence_; }
  std::size_t index() const { return index_; }

 private:
  std::string sequence_;
  std::size_t index_;
};

/// An iterate left the positive cone, so max(Av/v) is undefined.
class NonPositiveIterate : public Error {
 public:
  NonPositiveIterate(int iteration, std::size_t index)
      : Error("iterate " + std::to_string(iteration) + " has a non-positive component at index " +
              std::to_string(index)),
        iteration_(iteration) {}

  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

class MaxIterationsExceeded : public Error {
 public:
  explicit MaxIterationsExceeded(int iterations)
      : Error("no convergence after " + std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}

  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// Text input could not be parsed; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace maxeig
