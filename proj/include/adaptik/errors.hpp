#pragma once

#include <stdexcept>
#include <string>

namespace adaptik {

/// Invalid argument or violated precondition.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An iterative procedure hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A matrix required to be well conditioned is numerically singular.
class RankError : public std::runtime_error {
 public:
  explicit RankError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Cross-validation trace denominator is nonpositive: the system has too few
/// rows relative to its effective degrees of freedom.
class TraceError : public DomainError {
 public:
  explicit TraceError(const std::string& msg) : DomainError(msg) {}
};

/// Malformed input file. The message names the offending line and column.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A parameter search space contains no candidate that evaluates to a
/// finite score (empty feasible set, or every evaluation failed).
class InfeasibleError : public DomainError {
 public:
  explicit InfeasibleError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace adaptik
