#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbftune {

// Base of every error thrown by the library. Catching this is enough to
// separate numerical/runtime failures from programming errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition: bad sizes, non-positive counts, mismatched
// dimensions, points outside the function domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent inputs that are individually valid (centers not a subset of
// the data locations, overlapping test and training data).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// The requested combination is well formed but not supported, e.g. Rippa's
// rule on a least-squares fit.
class UnsupportedConfigurationError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateLocationError : public Error {
 public:
  // `rows` holds groups of 1-based input line numbers sharing one location.
  DuplicateLocationError(std::vector<std::vector<std::size_t>> rows, const std::string& what)
      : Error(what), rows_(std::move(rows)) {}

  const std::vector<std::vector<std::size_t>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::vector<std::size_t>> rows_;
};

// Square kernel system could not be factored, even after the jitter retry.
class ConditioningError : public Error {
 public:
  ConditioningError(double epsilon, const std::string& what)
      : Error(what), epsilon_(epsilon) {}

  double epsilon() const noexcept { return epsilon_; }

 private:
  double epsilon_;
};

// Rectangular collocation matrix is numerically rank deficient.
class RankError : public Error {
 public:
  RankError(double epsilon, std::size_t rank, std::size_t columns, const std::string& what)
      : Error(what), epsilon_(epsilon), rank_(rank), columns_(columns) {}

  double epsilon() const noexcept { return epsilon_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t columns() const noexcept { return columns_; }

 private:
  double epsilon_;
  std::size_t rank_;
  std::size_t columns_;
};

class SearchFailedError : public Error {
 public:
  using Error::Error;
};

class SurrogateFitError : public Error {
 public:
  using Error::Error;
};

class OptimizationFailedError : public Error {
 public:
  using Error::Error;
};

}  // namespace rbftune
