#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lglab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A cell whose boundary is not a closed, simple, positively oriented curve.
class InvalidCellError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input too large for an exhaustive or cubic-time routine.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed textual input (angle strings, JSON documents, generator specs).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Superlevel regions of consecutive thresholds that fail to nest. Carries
/// the offending pair so the report can name it.
class NestednessError : public std::logic_error {
 public:
  NestednessError(std::size_t lower, std::size_t upper, double lower_threshold, double upper_threshold)
      : std::logic_error("level regions not nested: threshold " + std::to_string(upper) + " (t = " +
                         std::to_string(upper_threshold) + ") escapes threshold " + std::to_string(lower) +
                         " (t = " + std::to_string(lower_threshold) + ")"),
        lower_(lower),
        upper_(upper) {}

  std::size_t lower() const { return lower_; }
  std::size_t upper() const { return upper_; }

 private:
  std::size_t lower_;
  std::size_t upper_;
};

}  // namespace lglab
