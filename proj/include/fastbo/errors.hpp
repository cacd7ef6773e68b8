// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_ERRORS_HPP
#define FASTBO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fastbo {

// Thrown when an operation is handed fewer data points than it needs.
class InsufficientData : public std::runtime_error {
 public:
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a linear-algebra step fails even after jitter escalation.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text; carries a human-readable location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("parse error at line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally valid input that violates a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Budget too small for even one warm-up to complete.
class BudgetTooSmall : public std::runtime_error {
 public:
  explicit BudgetTooSmall(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fastbo

#endif  // FASTBO_ERRORS_HPP
