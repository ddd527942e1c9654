#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

/// A precondition of an operation was violated by its arguments.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The forward recurrence left binary64 range (|P_n| or |Q_n| > 1e300).
class RecurrenceOverflow : public std::runtime_error {
 public:
  RecurrenceOverflow(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A growth estimate could not be formed from the sampled data.
class EvaluationBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (JSON descriptor, CSV, config).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jacobi
